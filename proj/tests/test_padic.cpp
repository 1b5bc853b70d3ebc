#include <doctest.h>

#include "core/util.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/field.hpp"
#include "padic/matrix.hpp"
#include "padic/solve.hpp"

using namespace orbital;
using namespace orbital::padic;

static Fe rand_fe(const Ctx& c, SplitMix64& rng, int vlo = -3, int vhi = 3) {
  long long p = c->p;
  long long a = (long long)rng.below((uint64_t)(p * p * p));
  long long b = (long long)rng.below((uint64_t)(p * p * p));
  if (a == 0 && b == 0) a = 1;
  return Fe::from_parts(c, rng.range(vlo, vhi), a, b);
}

TEST_CASE("field config picks a nonresidue") {
  auto c3 = FieldConfig::make(3);
  CHECK(c3->eps == 2);
  auto c5 = FieldConfig::make(5);
  CHECK(c5->eps == 2);
  auto c7 = FieldConfig::make(7);
  CHECK(c7->eps == 3);
  CHECK_THROWS_AS(FieldConfig::make(4), ConfigError);
  CHECK_THROWS_AS(FieldConfig::make(2), ConfigError);
}

TEST_CASE("basic arithmetic and valuations") {
  auto c = FieldConfig::make(3);
  Fe x = Fe::from_parts(c, 2, 5, 0);  // p^2 * 5
  CHECK(x.valuation() == 2);
  Fe w = Fe::omega(c);
  CHECK(w.conj().eq(-w));                       // conjugation negates the root
  Fe y = Fe::from_parts(c, 0, 4, 7);
  CHECK(y.trace().eq(Fe::integer(c, 8)));       // trace(a+bw) = 2a
  CHECK(y.trace().in_base_field());
  Fe inv = y.inv();
  CHECK((y * inv).eq(Fe::integer(c, 1)));
  CHECK_THROWS_AS(Fe::zero(c).inv(), DivisionByZero);
  Fe z = Fe::from_parts(c, -1, 2, 3);
  CHECK(z.norm().in_base_field());
  CHECK(z.norm().valuation() == -2);
}

TEST_CASE("conj is an involution on random elements") {
  auto c = FieldConfig::make(5);
  SplitMix64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    Fe x = rand_fe(c, rng);
    CHECK(x.conj().conj().eq(x));
  }
}

TEST_CASE("addition handles cancellation honestly") {
  auto c = FieldConfig::make(3);
  Fe x = Fe::from_parts(c, 0, 1, 1);
  Fe d = x - x;
  CHECK(d.kind() == Fe::Kind::ZeroMod);
  CHECK_THROWS_AS(d.valuation(), PrecisionExhausted);
  CHECK(d.is_zero_mod(5));
  // 1 + (p-1) = p: valuation climbs one digit
  Fe s = Fe::integer(c, 1) + Fe::integer(c, 2);
  CHECK(s.valuation() == 1);
}

TEST_CASE("cyclotomic canonical form") {
  long long p = 3;
  Cyc s = Cyc::one(p) + Cyc::root(p, 1, 1) + Cyc::root(p, 1, 2);
  CHECK(s.is_zero());
  Cyc z = Cyc::root(p, 1, 1);
  CHECK(z * z * z == Cyc::one(p));
  Cyc z9 = Cyc::root(p, 2, 1);
  Cyc cube = z9 * z9 * z9;
  CHECK(cube.level() == 1);
  CHECK(cube == Cyc::root(p, 1, 1));
  Cyc a = Cyc::root(p, 2, 8) * Cyc::root(p, 2, 4);
  Cyc b = Cyc::root(p, 2, 12);
  CHECK(a == b);
  long long n;
  CHECK(Cyc(p, 5).is_integer(&n));
  CHECK(n == 5);
}

TEST_CASE("cyclotomic galois action is a ring automorphism") {
  long long p = 3;
  SplitMix64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    Cyc a = Cyc::root(p, 2, (long long)rng.below(9)).scaled(rng.range(-3, 3)) +
            Cyc::root(p, 2, (long long)rng.below(9));
    Cyc b = Cyc::root(p, 2, (long long)rng.below(9)).scaled(rng.range(-3, 3));
    long long cunit = 1 + 3 * (long long)rng.below(3);
    CHECK((a + b).galois(cunit) == a.galois(cunit) + b.galois(cunit));
    CHECK((a * b).galois(cunit) == a.galois(cunit) * b.galois(cunit));
  }
}

TEST_CASE("psi normalization and additivity") {
  auto c = FieldConfig::make(3);
  PsiChar psi(c);
  CHECK(psi(Fe::integer(c, 7)) == Cyc::one(3));
  CHECK(psi(Fe::from_parts(c, 2, 1, 1)) == Cyc::one(3));
  // psi(1/p) = psi_0(tr(1/p)) = psi_0(2/p) = zeta_3^2
  CHECK(psi(Fe::from_parts(c, -1, 1, 0)) == Cyc::root(3, 1, 2));
  // psi_0 itself matches the fixed normalization psi_0(a/p^k) = zeta^a
  CHECK(psi.base(Fe::from_parts(c, -1, 1, 0)) == Cyc::root(3, 1, 1));
  // tr(w/p) = 0
  CHECK(psi(Fe::from_parts(c, -1, 0, 1)) == Cyc::one(3));
  SplitMix64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    Fe x = rand_fe(c, rng, -3, 2), y = rand_fe(c, rng, -3, 2);
    CHECK(psi(x + y) == psi(x) * psi(y));
  }
}

TEST_CASE("psi galois equivariance under unit twists") {
  auto c = FieldConfig::make(3);
  PsiChar psi(c), psi2(c, 2);
  SplitMix64 rng(10);
  for (int i = 0; i < 500; ++i) {
    Fe x = rand_fe(c, rng, -2, 1);
    CHECK(psi2(x) == psi(x).galois(2));
  }
}

TEST_CASE("eta is the unramified quadratic character") {
  auto c = FieldConfig::make(3);
  CHECK(eta_value(Fe::integer(c, 2)) == 1);
  CHECK(eta_value(Fe::from_parts(c, 1, 1, 0)) == -1);
  CHECK(eta_value(Fe::from_parts(c, 2, 2, 0)) == 1);
  CHECK_THROWS_AS(eta_value(Fe::zero(c)), DivisionByZero);
}

TEST_CASE("field literals round trip") {
  auto c = FieldConfig::make(5);
  Fe x = parse_fe(c, "p^-2 * (3 + 4*w)");
  CHECK(x.valuation() == -2);
  CHECK(x.eq(Fe::from_parts(c, -2, 3, 4)));
  CHECK(parse_fe(c, "7").eq(Fe::integer(c, 7)));
  CHECK(parse_fe(c, x.str()).eq(x));
}

TEST_CASE("norm equation solvers") {
  for (long long p : {3LL, 5LL, 7LL}) {
    auto c = FieldConfig::make(p);
    SplitMix64 rng((uint64_t)p);
    for (int i = 0; i < 50; ++i) {
      long long u = (long long)rng.below((uint64_t)(p * p * p));
      if (u % p == 0) u += 1;
      Fe t = Fe::from_parts(c, 2 * rng.range(-2, 2), u, 0);
      Fe z = norm_solve(c, t);
      CHECK(z.norm().eq(t));
    }
    Fe d1 = Fe::from_parts(c, 1, 1, 0), d2 = Fe::from_parts(c, 1, p - 1, 0);
    auto [x, y] = binary_norm_solve(c, d1, d2);
    Fe lhs = d1 * x.norm() + d2 * y.norm();
    CHECK(lhs.eq(Fe::integer(c, 1)));
  }
}

TEST_CASE("matrix inverse and charpoly") {
  auto c = FieldConfig::make(3);
  Mat m(2, 2, c);
  m.at(0, 0) = Fe::integer(c, 2);
  m.at(0, 1) = Fe::from_parts(c, -1, 1, 0);
  m.at(1, 0) = Fe::integer(c, 0);
  m.at(1, 1) = Fe::from_parts(c, 1, 1, 1);
  Mat mi = m.inverse();
  CHECK((m * mi).is_identity());
  auto cp = m.charpoly();
  CHECK(cp[1].eq(-(m.at(0, 0) + m.at(1, 1))));
  CHECK(cp[2].eq(m.det()));
}
