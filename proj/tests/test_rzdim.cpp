#include <doctest.h>

#include "rzdim/rzdim.hpp"

using namespace orbital;
using namespace orbital::rz;

TEST_CASE("ginzburg-rallis quadruple") {
  auto rep = ginzburg_rallis_report();
  CHECK(rep.dim_unfiltered_relative == 9);
  CHECK(rep.dim_filtered_relative == 6);
  CHECK(rep.dim_cycle_total == 5);
  CHECK(rep.dim_ambient_total == 10);
  CHECK(rep.dim_cycle_total * 2 == rep.dim_ambient_total);
}

TEST_CASE("unitary signatures") {
  // (n-1, 1) unfiltered gives n-1
  for (long long n = 2; n <= 8; ++n) {
    RZDatum d;
    d.kind = RZDatum::Case::PEL;
    d.sig = {{n - 1, 1, {}}, {1, n - 1, {}}};
    d.conj_of = {1, 0};
    CHECK(relative_dimension(d) == n - 1);
  }
}

TEST_CASE("filtered bessel datum matches the closed form") {
  for (long long n = 2; n <= 8; ++n)
    for (long long r = 0; r <= n; ++r)
      for (long long j = 0; 2 * j + r <= n; ++j) {
        RZDatum d = bessel_pel_datum(n, r, j);
        CHECK(relative_dimension(d) == bessel_kr_dimension(n, r, j));
      }
  // spot value from the (4, 1, 1) case
  CHECK(bessel_kr_dimension(4, 1, 1) == 2);
}

TEST_CASE("degenerate filtration equals the unfiltered formula") {
  RZDatum d = bessel_pel_datum(5, 2, 0);
  RZDatum u;
  u.kind = RZDatum::Case::PEL;
  u.sig = {{2, 3, {}}, {3, 2, {}}};
  u.conj_of = {1, 0};
  CHECK(relative_dimension(d) == relative_dimension(u));
}

TEST_CASE("totally definite datum has dimension zero") {
  RZDatum d;
  d.kind = RZDatum::Case::EL;
  d.sig = {{3, 0, {}}, {0, 4, {}}};
  CHECK(relative_dimension(d) == 0);
}

TEST_CASE("filtered EL equals the layer recursion") {
  // recompute sum_j s^j sum_{i<=j} r^i by explicit recursion over prefixes
  RZDatum d;
  d.kind = RZDatum::Case::EL;
  d.filtered = true;
  RZDatum::Signature s;
  s.layers = {{2, 1}, {0, 3}, {1, 1}, {2, 0}};
  for (auto& [r, t] : s.layers) {
    s.r += r;
    s.s += t;
  }
  d.sig = {s};
  long long got = relative_dimension(d);
  // recursion: dim(l layers) = dim(l-1 layers) + s^l * (r^1 + ... + r^l)
  long long expect = 0, rsum = 0;
  for (auto& [r, t] : s.layers) {
    rsum += r;
    expect += t * rsum;
  }
  CHECK(got == expect);
}

TEST_CASE("invalid data are rejected") {
  RZDatum d;
  d.kind = RZDatum::Case::PEL;
  d.sig = {{2, 1, {}}, {2, 1, {}}};  // violates r_phi = s_phibar
  d.conj_of = {1, 0};
  CHECK_THROWS_AS(relative_dimension(d), InvalidDatum);
  RZDatum e;
  e.kind = RZDatum::Case::EL;
  e.filtered = true;
  RZDatum::Signature s;
  s.r = 2;
  s.s = 2;
  s.layers = {{1, 1}};  // layers do not sum to (r, s)
  e.sig = {s};
  CHECK_THROWS_AS(relative_dimension(e), InvalidDatum);
  CHECK_THROWS_AS(bessel_pel_datum(3, 1, 4), InvalidDatum);
}
