#include "padic/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace orbital::padic {

using u64 = uint64_t;
using u128 = unsigned __int128;

bool FieldConfig::is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long FieldConfig::smallest_nonresidue(long long p) {
  // eps with eps^((p-1)/2) ≡ -1 mod p
  auto powm = [&](long long b, long long e) {
    long long r = 1 % p;
    b %= p;
    while (e) {
      if (e & 1) r = (long long)((u128)r * (u128)b % (u128)p);
      b = (long long)((u128)b * (u128)b % (u128)p);
      e >>= 1;
    }
    return r;
  };
  for (long long c = 2; c < p; ++c)
    if (powm(c, (p - 1) / 2) == p - 1) return c;
  throw ConfigError("no quadratic nonresidue found (p must be an odd prime)");
}

int FieldConfig::max_precision_for(long long p) {
  int n = 0;
  u128 acc = 1;
  while (acc * (u128)p < ((u128)1 << 63)) {
    acc *= (u128)p;
    ++n;
  }
  return n;
}

namespace {
std::vector<Ctx>& config_registry() {
  static std::vector<Ctx> reg;
  return reg;
}
}  // namespace

Ctx FieldConfig::make(long long p, int precision_request, long long eps_override) {
  if (!is_prime(p) || p == 2) throw ConfigError("p must be an odd prime, got " + std::to_string(p));
  int cap = max_precision_for(p);
  int n = precision_request > 0 ? precision_request : std::min(24, cap);
  if (n > cap)
    throw ConfigError("precision " + std::to_string(n) + " too large for p=" + std::to_string(p) +
                      " (max " + std::to_string(cap) + " with 64-bit residues)");
  if (n < 4) throw ConfigError("precision must be at least 4");
  auto cfg = std::make_shared<FieldConfig>();
  cfg->p = p;
  cfg->precision = n;
  long long eps = eps_override ? eps_override : smallest_nonresidue(p);
  // validate: eps must reduce to a nonresidue mod p
  {
    long long e = ((eps % p) + p) % p;
    if (e == 0) throw ConfigError("eps must be a unit mod p");
    long long r = 1;
    for (long long i = 0; i < (p - 1) / 2; ++i) r = (r * e) % p;
    if (r != p - 1) throw ConfigError("omega minimal polynomial X^2 - eps is reducible mod p");
  }
  cfg->eps = eps;
  cfg->ppow.resize((size_t)n + 1);
  cfg->ppow[0] = 1;
  for (int i = 1; i <= n; ++i) cfg->ppow[(size_t)i] = cfg->ppow[(size_t)i - 1] * (u64)p;
  config_registry().push_back(cfg);
  return cfg;
}

u64 inv_mod_u64(u64 a, u64 m) {
  // extended Euclid; m odd prime power here
  long long t = 0, newt = 1;
  long long r = (long long)m, newr = (long long)(a % m);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw DivisionByZero("inverse of non-unit residue");
  if (t < 0) t += (long long)m;
  return (u64)t;
}

static u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * (u128)b % (u128)m); }

Fe Fe::zero_raw(const FieldConfig* c) {
  Fe x;
  x.cfg_ = c;
  x.kind_ = Kind::ExactZero;
  return x;
}

Fe Fe::zero_mod_raw(const FieldConfig* c, long long absprec) {
  Fe x;
  x.cfg_ = c;
  x.kind_ = Kind::ZeroMod;
  x.val_ = absprec;
  return x;
}

Fe Fe::make_unit_raw(const FieldConfig* c, long long val, u64 a, u64 b, int prec) {
  Fe x;
  x.cfg_ = c;
  x.kind_ = Kind::Unit;
  x.val_ = val;
  x.prec_ = std::min(prec, c->precision);
  x.a_ = a % c->pk(x.prec_);
  x.b_ = b % c->pk(x.prec_);
  x.canonicalize_unit();
  return x;
}

Fe Fe::from_parts_raw(const FieldConfig* c, long long val, long long a, long long b) {
  if (a == 0 && b == 0) return zero_raw(c);
  int n = c->precision;
  u64 m = c->pk(n);
  u64 ua = (u64)(((a % (long long)m) + (long long)m) % (long long)m);
  u64 ub = (u64)(((b % (long long)m) + (long long)m) % (long long)m);
  return make_unit_raw(c, val, ua, ub, n);
}

Fe Fe::zero_mod(const Ctx& c, long long absprec) { return zero_mod_raw(c.get(), absprec); }

Fe Fe::make_unit(const Ctx& c, long long val, u64 a, u64 b, int prec) {
  return make_unit_raw(c.get(), val, a, b, prec);
}

Fe Fe::from_parts(const Ctx& c, long long val, long long a, long long b) {
  return from_parts_raw(c.get(), val, a, b);
}

void Fe::canonicalize_unit() {
  // strip common powers of p from (a,b); if everything vanished the element
  // is zero to the available precision
  const auto& c = *cfg_;
  long long p = c.p;
  int k = 0;
  while (k < prec_ && a_ % (u64)p == 0 && b_ % (u64)p == 0 && (a_ || b_)) {
    a_ /= (u64)p;
    b_ /= (u64)p;
    ++k;
  }
  if (a_ == 0 && b_ == 0) {
    // all digits zero: 0 mod p^{val+prec}
    long long abs = val_ + prec_;
    kind_ = Kind::ZeroMod;
    val_ = abs;
    prec_ = 0;
    return;
  }
  val_ += k;
  prec_ -= k;
  u64 m = c.pk(prec_);
  a_ %= m;
  b_ %= m;
}

long long Fe::valuation() const {
  switch (kind_) {
    case Kind::ExactZero: return kInfVal;
    case Kind::Unit: return val_;
    case Kind::ZeroMod:
      throw PrecisionExhausted("valuation undetermined (zero to precision p^" +
                               std::to_string(val_) + ")");
  }
  return 0;
}

long long Fe::absprec() const {
  switch (kind_) {
    case Kind::ExactZero: return kInfVal;
    case Kind::ZeroMod: return val_;
    case Kind::Unit: return val_ + prec_;
  }
  return 0;
}

bool Fe::is_zero_mod(long long k) const {
  switch (kind_) {
    case Kind::ExactZero: return true;
    case Kind::ZeroMod:
      if (val_ >= k) return true;
      throw PrecisionExhausted("congruence mod p^" + std::to_string(k) +
                               " undecidable at absolute precision " + std::to_string(val_));
    case Kind::Unit: return val_ >= k;
  }
  return false;
}

Fe Fe::add_impl(const Fe& x, const Fe& y) {
  const FieldConfig* c = x.cfg_ ? x.cfg_ : y.cfg_;
  if (x.kind_ == Kind::ExactZero) return y;
  if (y.kind_ == Kind::ExactZero) return x;
  long long abs = std::min(x.absprec(), y.absprec());
  if (x.kind_ != Kind::Unit && y.kind_ != Kind::Unit) return zero_mod_raw(c, abs);
  long long base = kInfVal;
  if (x.kind_ == Kind::Unit) base = std::min(base, x.val_);
  if (y.kind_ == Kind::Unit) base = std::min(base, y.val_);
  int digits = (int)std::min<long long>(abs - base, c->precision);
  if (digits <= 0) return zero_mod_raw(c, abs);
  u64 m = c->pk(digits);
  u64 a = 0, b = 0;
  for (const Fe* e : {&x, &y}) {
    if (e->kind_ != Kind::Unit) continue;
    long long sh = e->val_ - base;
    if (sh >= digits) continue;
    u64 f = c->pk((int)sh);
    a = (a + mulmod(e->a_ % m, f, m)) % m;
    b = (b + mulmod(e->b_ % m, f, m)) % m;
  }
  if (a == 0 && b == 0) return zero_mod_raw(c, abs);
  Fe r = make_unit_raw(c, base, a, b, digits);
  // make_unit may keep more relative precision than truly available when the
  // sum cancelled leading digits; cap against abs
  if (r.kind_ == Kind::Unit && r.val_ + r.prec_ > abs) {
    r.prec_ = (int)(abs - r.val_);
    if (r.prec_ <= 0) return zero_mod_raw(c, abs);
    u64 mm = c->pk(r.prec_);
    r.a_ %= mm;
    r.b_ %= mm;
    if (r.a_ == 0 && r.b_ == 0) return zero_mod_raw(c, abs);
  }
  return r;
}

Fe Fe::operator+(const Fe& o) const { return add_impl(*this, o); }

Fe Fe::operator-() const {
  if (kind_ != Kind::Unit) return *this;
  u64 m = cfg_->pk(prec_);
  Fe r = *this;
  r.a_ = a_ ? m - a_ : 0;
  r.b_ = b_ ? m - b_ : 0;
  return r;
}

Fe Fe::operator-(const Fe& o) const { return add_impl(*this, -o); }

Fe Fe::operator*(const Fe& o) const {
  const FieldConfig* c = cfg_ ? cfg_ : o.cfg_;
  if (kind_ == Kind::ExactZero || o.kind_ == Kind::ExactZero) return zero_raw(c);
  if (kind_ == Kind::ZeroMod || o.kind_ == Kind::ZeroMod) {
    return zero_mod_raw(c, val_ + o.val_);
  }
  int prec = std::min(prec_, o.prec_);
  u64 m = c->pk(prec);
  u64 xa = a_ % m, xb = b_ % m, ya = o.a_ % m, yb = o.b_ % m;
  u64 e = (u64)(((c->eps % (long long)m) + (long long)m) % (long long)m);
  u64 a = (mulmod(xa, ya, m) + mulmod(mulmod(xb, yb, m), e, m)) % m;
  u64 b = (mulmod(xa, yb, m) + mulmod(xb, ya, m)) % m;
  return make_unit_raw(c, val_ + o.val_, a, b, prec);
}

Fe Fe::inv() const {
  if (kind_ == Kind::ExactZero) throw DivisionByZero("inverse of exact zero");
  if (kind_ == Kind::ZeroMod)
    throw PrecisionExhausted("inverse of element indistinguishable from zero");
  u64 m = cfg_->pk(prec_);
  u64 e = (u64)(((cfg_->eps % (long long)m) + (long long)m) % (long long)m);
  // (a+bw)^-1 = (a-bw)/(a^2-eps b^2)
  u64 nrm = (mulmod(a_, a_, m) + m - mulmod(mulmod(b_, b_, m), e, m) % m) % m;
  u64 ninv = inv_mod_u64(nrm, m);
  u64 a = mulmod(a_, ninv, m);
  u64 b = mulmod(b_ ? m - b_ : 0, ninv, m);
  return make_unit_raw(cfg_, -val_, a, b, prec_);
}

Fe Fe::conj() const {
  if (kind_ != Kind::Unit) return *this;
  u64 m = cfg_->pk(prec_);
  Fe r = *this;
  r.b_ = b_ ? m - b_ : 0;
  return r;
}

Fe Fe::trace() const { return *this + conj(); }
Fe Fe::norm() const { return *this * conj(); }

bool Fe::in_base_field(long long level) const {
  if (kind_ != Kind::Unit) return true;
  long long k = (level < 0) ? val_ + prec_ : level;
  long long rel = k - val_;
  if (rel <= 0) return true;
  if (rel > prec_)
    throw PrecisionExhausted("base-field membership undecidable");
  return b_ % cfg_->pk((int)rel) == 0;
}

Fe Fe::mul_ppow(long long k) const {
  Fe r = *this;
  if (kind_ == Kind::ExactZero) return r;
  r.val_ += k;  // both Unit val and ZeroMod bound shift
  return r;
}

bool Fe::eq(const Fe& o) const {
  Fe d = *this - o;
  if (d.kind_ == Kind::ExactZero) return true;
  if (d.kind_ == Kind::Unit) return false;
  // zero to available precision: equal as far as we can tell; require some
  // genuine overlap so that nonsense comparisons fail loudly
  if (d.val_ <= -(long long)(cfg_ ? cfg_->precision : 24))
    throw PrecisionExhausted("equality undecidable");
  return true;
}

Fe::Residue Fe::residue_mod(long long k) const {
  Residue r{k, 0, 0};
  if (kind_ == Kind::ExactZero) return r;
  if (kind_ == Kind::ZeroMod) {
    if (val_ >= k) return r;
    throw PrecisionExhausted("residue mod p^" + std::to_string(k) + " undetermined");
  }
  if (val_ >= k) return r;
  long long rel = k - val_;
  if (rel > prec_)
    throw PrecisionExhausted("residue mod p^" + std::to_string(k) + " exceeds precision");
  u64 m = cfg_->pk((int)rel);
  return Residue{val_, a_ % m, b_ % m};
}

std::string Fe::str() const {
  if (kind_ == Kind::ExactZero) return "0";
  if (kind_ == Kind::ZeroMod) return "O(p^" + std::to_string(val_) + ")";
  std::ostringstream os;
  if (val_ != 0) os << "p^" << val_ << "*";
  os << "(" << a_;
  if (b_) os << "+" << b_ << "*w";
  os << ")";
  return os.str();
}

Fe parse_fe(const Ctx& c, const std::string& s) {
  // grammar: [p^v *] ( a [+|- b*w] )  |  plain integer  |  a+b*w
  std::string t;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) t.push_back(ch);
  long long v = 0;
  size_t i = 0;
  if (t.rfind("p^", 0) == 0) {
    i = 2;
    bool neg = false;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = t[i++] == '-';
    long long x = 0;
    bool any = false;
    while (i < t.size() && std::isdigit((unsigned char)t[i])) {
      x = x * 10 + (t[i++] - '0');
      any = true;
    }
    if (!any || i >= t.size() || t[i] != '*') throw ConfigError("bad field literal: " + s);
    ++i;
    v = neg ? -x : x;
  }
  std::string body = t.substr(i);
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  // parse a (+|-) b*w, either term optional
  long long a = 0, b = 0;
  size_t j = 0;
  auto read_term = [&](long long& sign_target_a, long long& sign_target_b) {
    long long sign = 1;
    if (j < body.size() && (body[j] == '+' || body[j] == '-')) sign = body[j++] == '-' ? -1 : 1;
    long long x = 0;
    bool any = false;
    while (j < body.size() && std::isdigit((unsigned char)body[j])) {
      x = x * 10 + (body[j++] - '0');
      any = true;
    }
    bool is_w = false;
    if (j < body.size() && (body[j] == 'w' || body[j] == '*')) {
      if (body[j] == '*') ++j;
      if (j < body.size() && body[j] == 'w') {
        is_w = true;
        ++j;
      } else
        throw ConfigError("bad field literal: " + s);
    }
    if (!any && !is_w) throw ConfigError("bad field literal: " + s);
    if (!any) x = 1;
    if (is_w)
      sign_target_b += sign * x;
    else
      sign_target_a += sign * x;
  };
  if (body.empty()) throw ConfigError("bad field literal: " + s);
  while (j < body.size()) read_term(a, b);
  return Fe::from_parts(c, v, a, b);
}

}  // namespace orbital::padic
