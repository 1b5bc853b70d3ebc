#include "padic/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace orbital::padic {

Cyc Cyc::root(long long p, int level, long long exponent) {
  Cyc z;
  z.p_ = p;
  z.level_ = level;
  long long n = ipow(p, level);
  z.c_.assign((size_t)n, 0);
  long long e = ((exponent % n) + n) % n;
  z.c_[(size_t)e] = 1;
  z.reduce();
  return z;
}

void Cyc::reduce() {
  // eliminate the top slice, then minimize the level
  while (true) {
    if (level_ == 0) return;
    long long n = (long long)c_.size();            // p^level
    long long q = n / p_;                          // p^{level-1}
    for (long long i = (p_ - 1) * q; i < n; ++i) {
      long long v = c_[(size_t)i];
      if (!v) continue;
      c_[(size_t)i] = 0;
      long long i0 = i - (p_ - 1) * q;
      for (long long j = 0; j < p_ - 1; ++j) c_[(size_t)(i0 + j * q)] -= v;
    }
    // level minimization: supported only on exponents divisible by p?
    bool down = true;
    for (long long i = 0; i < n; ++i)
      if (c_[(size_t)i] != 0 && i % p_ != 0) {
        down = false;
        break;
      }
    if (!down) return;
    std::vector<long long> d((size_t)q, 0);
    for (long long i = 0; i < q; ++i) d[(size_t)i] = c_[(size_t)(i * p_)];
    c_ = std::move(d);
    --level_;
  }
}

Cyc Cyc::lifted_to(int level) const {
  if (level == level_) return *this;
  Cyc z;
  z.p_ = p_;
  z.level_ = level;
  long long n = ipow(p_, level);
  long long f = ipow(p_, level - level_);
  z.c_.assign((size_t)n, 0);
  for (size_t i = 0; i < c_.size(); ++i) z.c_[(size_t)((long long)i * f)] = c_[i];
  return z;
}

bool Cyc::is_zero() const {
  return level_ == 0 && c_[0] == 0;
}

bool Cyc::is_integer(long long* out) const {
  if (level_ != 0) return false;
  if (out) *out = c_[0];
  return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
  int lv = std::max(level_, o.level_);
  Cyc a = lifted_to(lv), b = o.lifted_to(lv);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  a.reduce();
  return a;
}

Cyc Cyc::operator-() const {
  Cyc a = *this;
  for (auto& v : a.c_) v = -v;
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  int lv = std::max(level_, o.level_);
  Cyc a = lifted_to(lv), b = o.lifted_to(lv);
  long long n = (long long)a.c_.size();
  std::vector<long long> prod((size_t)n, 0);
  for (long long i = 0; i < n; ++i) {
    if (!a.c_[(size_t)i]) continue;
    for (long long j = 0; j < n; ++j) {
      if (!b.c_[(size_t)j]) continue;
      prod[(size_t)((i + j) % n)] += a.c_[(size_t)i] * b.c_[(size_t)j];
    }
  }
  Cyc z;
  z.p_ = p_;
  z.level_ = lv;
  z.c_ = std::move(prod);
  z.reduce();
  return z;
}

bool Cyc::operator==(const Cyc& o) const {
  return p_ == o.p_ && level_ == o.level_ && c_ == o.c_;
}

Cyc Cyc::galois(long long c) const {
  long long n = (long long)c_.size();
  long long cc = ((c % n) + n) % n;
  if (level_ > 0 && cc % p_ == 0) throw Error("galois exponent must be a unit");
  Cyc z;
  z.p_ = p_;
  z.level_ = level_;
  z.c_.assign((size_t)n, 0);
  for (long long i = 0; i < n; ++i)
    if (c_[(size_t)i]) z.c_[(size_t)((i * cc) % n)] += c_[(size_t)i];
  z.reduce();
  return z;
}

Cyc Cyc::scaled(long long k) const {
  Cyc a = *this;
  for (auto& v : a.c_) v *= k;
  a.reduce();
  return a;
}

std::string Cyc::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    if (!first) os << (c_[i] > 0 ? "+" : "");
    first = false;
    if (i == 0)
      os << c_[i];
    else {
      if (c_[i] == -1)
        os << "-";
      else if (c_[i] != 1)
        os << c_[i] << "*";
      os << "z" << level_ << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

Cyc PsiChar::base(const Fe& x0) const {
  long long p = ctx_->p;
  if (x0.is_exact_zero()) return Cyc::one(p);
  if (x0.kind() == Fe::Kind::ZeroMod) {
    if (x0.absprec() >= 0) return Cyc::one(p);
    throw PrecisionExhausted("psi_0 argument undetermined mod Z_p");
  }
  long long v = x0.valuation();
  if (v >= 0) return Cyc::one(p);
  long long k = -v;
  if (k > x0.rel_prec())
    throw PrecisionExhausted("psi_0 needs " + std::to_string(k) + " digits");
  if (!x0.in_base_field(0)) throw Error("psi_0 applied to element outside F_0");
  uint64_t m = ctx_->pk((int)k);
  uint64_t a = x0.unit_a() % m;
  long long tw = ((twist_ % (long long)m) + (long long)m) % (long long)m;
  uint64_t e = (uint64_t)((unsigned __int128)a * (unsigned __int128)tw % (unsigned __int128)m);
  return Cyc::root(p, (int)k, (long long)e);
}

Cyc PsiChar::operator()(const Fe& x) const { return base(x.trace()); }

int eta_value(const Fe& x) {
  long long v = x.valuation();
  if (v >= Fe::kInfVal) throw DivisionByZero("eta(0)");
  return (v % 2 == 0) ? 1 : -1;
}

}  // namespace orbital::padic
