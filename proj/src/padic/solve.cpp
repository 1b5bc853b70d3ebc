#include "padic/solve.hpp"

#include "padic/cyclotomic.hpp"

namespace orbital::padic {

using u64 = uint64_t;
using u128 = unsigned __int128;

static u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (u64)((u128)r * b % m);
    b = (u64)((u128)b * b % m);
    e >>= 1;
  }
  return r;
}

Fe sqrt_unit(const Ctx& c, const Fe& u) {
  if (!u.is_unit_kind() || u.valuation() % 2 != 0) throw Error("sqrt: need even valuation");
  if (!u.in_base_field()) throw Error("sqrt: argument outside F_0");
  long long p = c->p;
  int prec = u.rel_prec();
  u64 m = c->pk(prec);
  u64 a = u.unit_a();
  // mod-p root by exponentiation (works for p ≡ 3 mod 4) or scan
  u64 a0 = a % (u64)p;
  u64 x0 = 0;
  bool found = false;
  if (p % 4 == 3) {
    x0 = powmod(a0, (u64)((p + 1) / 4), (u64)p);
    found = (u128)x0 * x0 % (u64)p == a0;
  }
  if (!found) {
    for (u64 t = 1; t < (u64)p; ++t)
      if ((u128)t * t % (u64)p == a0) {
        x0 = t;
        found = true;
        break;
      }
  }
  if (!found) throw Error("sqrt: not a square");
  // Newton lifting x -> (x + a/x)/2
  u64 x = x0;
  u64 inv2 = inv_mod_u64(2 % m, m);
  for (int it = 0; it < prec + 2; ++it) {
    u64 xinv = inv_mod_u64(x, m);
    u64 nx = (u64)(((u128)x + (u128)a % m * xinv % m) % m);
    nx = (u64)((u128)nx * inv2 % m);
    if (nx == x) break;
    x = nx;
  }
  if ((u128)x * x % m != a % m) throw Error("sqrt: lifting failed");
  return Fe::make_unit(c, u.valuation() / 2, x, 0, prec);
}

Fe norm_solve(const Ctx& c, const Fe& t) {
  // Nm(x + y w) = x^2 - eps y^2; t a unit times even power of p
  if (!t.is_unit_kind()) throw DivisionByZero("norm_solve(0)");
  if (!t.in_base_field()) throw Error("norm_solve: target outside F_0");
  long long v = t.valuation();
  if (v % 2 != 0) throw Error("norm_solve: target is not a norm (odd valuation)");
  long long p = c->p;
  int prec = t.rel_prec();
  u64 m = c->pk(prec);
  u64 a = t.unit_a() % m;
  u64 e = (u64)(((c->eps % (long long)m) + (long long)m) % (long long)m);
  // find y0 mod p with a + eps y0^2 a nonzero square mod p, then lift x
  for (u64 y0 = 0; y0 < (u64)p; ++y0) {
    u64 target = (u64)(((u128)a + (u128)e * y0 % m * y0) % m);
    u64 t0 = target % (u64)p;
    if (t0 == 0) continue;
    if (powmod(t0, (u64)((p - 1) / 2), (u64)p) != 1) continue;
    Fe tgt = Fe::make_unit(c, 0, target, 0, prec);
    Fe x = sqrt_unit(c, tgt);
    Fe z = Fe::make_unit(c, v / 2, x.unit_a() % m, y0, prec);
    return z;
  }
  throw Error("norm_solve: no solution found");
}

std::pair<Fe, Fe> binary_norm_solve(const Ctx& c, const Fe& d1, const Fe& d2) {
  long long v1 = d1.valuation(), v2 = d2.valuation();
  Fe one = Fe::integer(c, 1);
  if (v1 % 2 == 0) {
    // d1 Nm(x) = 1 solvable directly
    Fe x = norm_solve(c, d1.inv());
    return {x, Fe::zero(c)};
  }
  if (v2 % 2 == 0) {
    Fe y = norm_solve(c, d2.inv());
    return {Fe::zero(c), y};
  }
  // both odd: with x = xt/p^{(v1+1)/2}, y = yt/p^{(v2+1)/2} reduce to
  // u1 Nm(xt) + u2 Nm(yt) = p with u_i = d_i / p^{v_i} units; take yt = 1 and
  // solve u1 Nm(xt) = p - u2 (a unit, hence a norm)
  Fe u1 = d1.mul_ppow(-v1), u2 = d2.mul_ppow(-v2);
  Fe pp = Fe::from_parts(c, 1, 1, 0);
  Fe rhs = (pp - u2) * u1.inv();
  if (rhs.valuation() != 0) throw Error("binary_norm_solve: unexpected valuation");
  Fe xt = norm_solve(c, rhs);
  Fe x = xt.mul_ppow(-(v1 + 1) / 2);
  Fe y = one.mul_ppow(-(v2 + 1) / 2);
  return {x, y};
}

}  // namespace orbital::padic
