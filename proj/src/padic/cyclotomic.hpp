#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "padic/field.hpp"

namespace orbital::padic {

// Exact element of Z[zeta_{p^k}], the value ring of psi-weighted lattice
// counts. Canonical form: coefficients indexed by exponents 0..p^k-1 with the
// top slice (exponents in [(p-1)p^{k-1}, p^k)) eliminated through
//   sum_{j=0..p-1} zeta^{i + j p^{k-1}} = 0,
// then the level minimized. Two equal values always have identical (level,
// coeffs).
class Cyc {
 public:
  Cyc() = default;
  explicit Cyc(long long p, long long n = 0) : p_(p), level_(0), c_{n} { reduce(); }

  static Cyc zero(long long p) { return Cyc(p, 0); }
  static Cyc one(long long p) { return Cyc(p, 1); }
  // zeta_{p^level}^exponent
  static Cyc root(long long p, int level, long long exponent);

  long long p() const { return p_; }
  int level() const { return level_; }
  const std::vector<long long>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_integer(long long* out = nullptr) const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // Galois action zeta -> zeta^c for c a unit mod p^level; a ring automorphism
  Cyc galois(long long c) const;
  // complex conjugation zeta -> zeta^{-1}
  Cyc conj() const { return galois(-1); }

  Cyc scaled(long long n) const;

  std::string str() const;

 private:
  long long p_ = 3;
  int level_ = 0;
  std::vector<long long> c_{0};  // length p^level_

  void reduce();
  Cyc lifted_to(int level) const;
  static long long ipow(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
  }
};

// The fixed additive characters.
//
// psi_0: F_0 -> C^x of level zero, normalized by psi_0(a/p^k mod Z_p) =
// zeta_{p^k}^a; psi = psi_0 o tr on F. A unit twist c replaces psi_0 by
// x -> psi_0(c x); twist 1 is the reference choice.
class PsiChar {
 public:
  explicit PsiChar(Ctx ctx, long long twist = 1) : ctx_(std::move(ctx)), twist_(twist) {}

  const Ctx& ctx() const { return ctx_; }
  long long twist() const { return twist_; }

  // psi(x) = psi_0(tr x); depends only on x mod O_F
  Cyc operator()(const Fe& x) const;
  // psi_0 applied to an F_0-element directly (no trace)
  Cyc base(const Fe& x0) const;

 private:
  Ctx ctx_;
  long long twist_;
};

// eta(x) = (-1)^{val x}, the unramified quadratic character of F_0^x; extended
// to F^x by the same formula where needed (transfer factors).
int eta_value(const Fe& x);

}  // namespace orbital::padic
