#pragma once

#include <stdexcept>
#include <string>

namespace orbital {

// Error taxonomy shared by the whole library. The C API maps these to
// numeric codes; the CLI maps them to exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& w) : Error("precision exhausted: " + w) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w) : Error("division by zero: " + w) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& w) : Error("rank deficient: " + w) {}
};

struct NotAVertexLattice : Error {
  explicit NotAVertexLattice(const std::string& w) : Error("not a vertex lattice: " + w) {}
};

struct NotInVertDagger : Error {
  explicit NotInVertDagger(const std::string& w) : Error("not in the saturated vertex set: " + w) {}
};

struct NotPreRegular : Error {
  explicit NotPreRegular(const std::string& w) : Error("not pre-regular: " + w) {}
};

struct NotRegular : Error {
  explicit NotRegular(const std::string& w) : Error("not regular: " + w) {}
};

struct WindowTooLarge : Error {
  explicit WindowTooLarge(const std::string& w) : Error("window too large: " + w) {}
};

struct SaturationFailed : Error {
  explicit SaturationFailed(const std::string& w) : Error("saturation failed: " + w) {}
};

struct MatchConstructionFailed : Error {
  explicit MatchConstructionFailed(const std::string& w) : Error("match construction failed: " + w) {}
};

struct InvalidDatum : Error {
  explicit InvalidDatum(const std::string& w) : Error("invalid datum: " + w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config error: " + w) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error("unsupported: " + w) {}
};

}  // namespace orbital
