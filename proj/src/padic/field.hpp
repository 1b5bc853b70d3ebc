#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace orbital::padic {

// F_0 = Q_p, F = Q_p(w) with w^2 = eps for eps the smallest positive
// quadratic nonresidue mod p. All arithmetic is exact modulo the tracked
// precision; nothing is ever silently truncated below a decision threshold.
//
// Residues are kept as uint64_t, so we require p^precision < 2^63. For the
// default precision of 24 valuation digits this covers p = 3 and p = 5; for
// larger p the constructor caps the default precision accordingly.
struct FieldConfig {
  long long p = 3;
  int precision = 24;  // N: unit parts are known mod p^N
  long long eps = 2;   // omega^2 = eps, a nonresidue mod p
  std::vector<uint64_t> ppow;  // p^0 .. p^precision

  static bool is_prime(long long n);
  static long long smallest_nonresidue(long long p);
  static int max_precision_for(long long p);

  // precision_request <= 0 means "default" (24, capped so p^N < 2^63).
  // Configs are interned for the process lifetime so that elements can hold
  // plain pointers.
  static std::shared_ptr<const FieldConfig> make(long long p, int precision_request = 0,
                                                 long long eps_override = 0);

  uint64_t pk(int k) const { return ppow[(size_t)k]; }
};

using Ctx = std::shared_ptr<const FieldConfig>;

// Element of F. States:
//   ExactZero      -- literal zero, valuation +infinity
//   ZeroMod        -- congruent to 0 mod p^absprec; valuation undetermined
//   Unit           -- p^val * (a + b*w), (a,b) not both divisible by p,
//                     known to `prec` relative digits (1 <= prec <= N)
class Fe {
 public:
  enum class Kind : uint8_t { ExactZero, ZeroMod, Unit };

  Fe() = default;

  static Fe zero(const Ctx& c) { return zero_raw(c.get()); }
  static Fe zero_mod(const Ctx& c, long long absprec);
  // exact integer / rational literals; b is the omega-coefficient
  static Fe from_parts(const Ctx& c, long long val, long long a, long long b);
  static Fe integer(const Ctx& c, long long n) { return from_parts(c, 0, n, 0); }
  static Fe omega(const Ctx& c) { return from_parts(c, 0, 0, 1); }
  // p^val * (a + b*w) with a,b raw residues (already reduced is fine)
  static Fe make_unit(const Ctx& c, long long val, uint64_t a, uint64_t b, int prec);

  const FieldConfig* ctx() const { return cfg_; }
  Kind kind() const { return kind_; }
  bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
  bool is_unit_kind() const { return kind_ == Kind::Unit; }

  // valuation; throws PrecisionExhausted for ZeroMod, returns +inf sentinel for 0
  static constexpr long long kInfVal = std::numeric_limits<long long>::max() / 4;
  long long valuation() const;
  // absolute precision: element known mod p^absprec
  long long absprec() const;
  int rel_prec() const { return prec_; }
  uint64_t unit_a() const { return a_; }
  uint64_t unit_b() const { return b_; }

  // decisions at a level: is x ≡ 0 mod p^k ? Throws PrecisionExhausted when
  // the available digits cannot decide.
  bool is_zero_mod(long long k) const;
  // val >= k decision (same as is_zero_mod for our representation)
  bool val_at_least(long long k) const { return is_zero_mod(k); }

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator-() const;
  Fe operator*(const Fe& o) const;
  Fe inv() const;
  Fe operator/(const Fe& o) const { return *this * o.inv(); }

  Fe conj() const;   // a + b*w -> a - b*w
  Fe trace() const;  // x + conj(x), lands in F_0
  Fe norm() const;   // x * conj(x), lands in F_0
  bool in_base_field(long long level = -1) const;  // b ≡ 0 at available precision

  Fe mul_ppow(long long k) const;  // x * p^k

  // equality decision at the coarsest shared precision; exact on literals
  bool eq(const Fe& o) const;

  // canonical residue of x modulo p^k O_F: (k - val) digit pair; requires
  // enough precision. Returns {a mod p^{k-val}, b mod p^{k-val}, val}; for
  // x ≡ 0 mod p^k returns val = k with zero digits.
  struct Residue {
    long long val;
    uint64_t a, b;
    bool operator==(const Residue& o) const { return val == o.val && a == o.a && b == o.b; }
  };
  Residue residue_mod(long long k) const;

  std::string str() const;  // "p^v*(a+b*w)" literal form

 private:
  Kind kind_ = Kind::ExactZero;
  long long val_ = 0;  // Unit: valuation; ZeroMod: absolute precision
  int prec_ = 0;
  uint64_t a_ = 0, b_ = 0;
  const FieldConfig* cfg_ = nullptr;

  void canonicalize_unit();
  static Fe add_impl(const Fe& x, const Fe& y);
  static Fe zero_raw(const FieldConfig* c);
  static Fe zero_mod_raw(const FieldConfig* c, long long absprec);
  static Fe make_unit_raw(const FieldConfig* c, long long val, uint64_t a, uint64_t b, int prec);
  static Fe from_parts_raw(const FieldConfig* c, long long val, long long a, long long b);
};

// parse "p^v * (a + b*w)" (whitespace-insensitive, v/a/b integers; also
// accepts plain integers and "a+b*w")
Fe parse_fe(const Ctx& c, const std::string& s);

uint64_t inv_mod_u64(uint64_t a, uint64_t m);  // a invertible mod m

}  // namespace orbital::padic
