#include <doctest.h>

#include "core/util.hpp"
#include "orbint/verify.hpp"

using namespace orbital;
using namespace orbital::padic;
using namespace orbital::orbit;
using namespace orbital::integrals;

namespace {

Ctx c3() {
  static Ctx c = FieldConfig::make(3);
  return c;
}

NormalFormSymmetric gamma_instance(const Ctx& c, int m, int r, int max_val, uint64_t seed) {
  return random_symmetric(c, m, r, max_val, seed);
}

}  // namespace

TEST_CASE("unitary orbital: unit instance counts one pair") {
  auto c = c3();
  PsiChar psi(c);
  // a transported gamma with integral unit data gives a singleton-ish count;
  // at minimum, the engine must agree with brute force
  int checked = 0;
  for (uint64_t seed = 1; seed <= 40 && checked < 6; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 1, seed);
    if (which_space(gamma) != Space::V0) continue;
    NormalFormUnitary g = transport_to_unitary(gamma);
    BesselFrame F = BesselFrame::make(c, 1, 0);
    UnitaryOrbital got = orb_unitary(F, psi, g);
    Cyc brute = orb_unitary_bruteforce(F, psi, g);
    CHECK(got.value == brute);
    CHECK(got.support.saturated);
    long long n;
    CHECK(got.value.is_integer(&n));  // r = 0: weights collapse to 1
    CHECK(n >= 0);
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("symmetric orbital r=0: engines agree and unit support is X^0") {
  auto c = c3();
  PsiChar psi(c);
  int checked = 0;
  for (uint64_t seed = 1; seed <= 30 && checked < 6; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 1, seed);
    SymOrbital a = orb_symmetric_cosets(c, psi, gamma);
    SymOrbital b = orb_symmetric_lattices(c, psi, gamma);
    CHECK(a.poly == b.poly);
    CHECK(a.support.saturated);
    ++checked;
  }
  // an everywhere-integral instance with singleton support
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 0, seed);
    bool integral = true;
    for (int i = 0; i < 2 && integral; ++i)
      for (int j = 0; j < 2 && integral; ++j) {
        const Fe& e = gamma.core.at(i, j);
        if (e.is_unit_kind() && e.valuation() < 0) integral = false;
      }
    if (!integral) continue;
    // moments integral and moment-det a unit: the identity coset is the only
    // contributor
    Mat H = moment_gram(gamma.core);
    if (!H.det().is_unit_kind() || H.det().valuation() != 0) continue;
    SymOrbital s = orb_symmetric(c, psi, gamma);
    OrbPoly expect = OrbPoly::zero(3);
    expect.add_term(0, Cyc::one(3));
    CHECK(s.poly == expect);
    break;
  }
}

TEST_CASE("jacquet-rallis fundamental lemma r=0 n=2 (theorem)") {
  auto c = c3();
  PsiChar psi(c);
  VerifyOptions opt;
  int v0 = 0, v1 = 0;
  for (uint64_t seed = 500; seed < 560 && (v0 < 8 || v1 < 8); ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 2, seed);
    FLReport rep = verify_fl(c, psi, gamma, opt);
    CHECK(rep.provenance == Provenance::Theorem);
    INFO("seed ", seed, " space ", rep.space == Space::V0 ? "V0" : "V1", " lhs ",
         rep.lhs.str(), " rhs ", rep.rhs.str(), " omega ", rep.omega);
    CHECK(rep.equal);
    if (rep.space == Space::V0)
      ++v0;
    else
      ++v1;
  }
  CHECK(v0 >= 4);
  CHECK(v1 >= 4);
}

TEST_CASE("unit corner reduction to the next frame down") {
  auto c = c3();
  PsiChar psi(c);
  int done = 0;
  for (uint64_t seed = 700; seed < 740 && done < 5; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 1, 1, seed);
    gamma.t[0] = Fe::from_parts(c, 0, 1 + (long long)(seed % 2), (long long)(seed % 3));
    NormalFormSymmetric core_nf;
    core_nf.m = 1;
    core_nf.r = 0;
    core_nf.core = gamma.core;
    SymOrbital s4 = orb_symmetric(c, psi, gamma);
    SymOrbital s2 = orb_symmetric(c, psi, core_nf);
    CHECK(s4.poly == s2.poly);
    if (which_space(gamma) == Space::V0) {
      NormalFormUnitary g = transport_to_unitary(gamma);
      NormalFormUnitary gsharp;
      gsharp.m = 1;
      gsharp.r = 0;
      gsharp.core = g.core;
      UnitaryOrbital u4 = orb_unitary(BesselFrame::make(c, 1, 1), psi, g);
      UnitaryOrbital u2 = orb_unitary(BesselFrame::make(c, 1, 0), psi, gsharp);
      CHECK(u4.value == u2.value);
    }
    ++done;
  }
  CHECK(done == 5);
}

TEST_CASE("bessel vanishing on the non-split side, r=1") {
  auto c = c3();
  PsiChar psi(c);
  int done = 0;
  for (uint64_t seed = 50; seed < 120 && done < 6; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 1, 1, seed);
    if (which_space(gamma) != Space::V1) continue;
    SymOrbital s = orb_symmetric(c, psi, gamma);
    CHECK(s.poly.value_at_zero().is_zero());
    ++done;
  }
  CHECK(done == 6);
}

TEST_CASE("bound lattice contains every contributor") {
  auto c = c3();
  PsiChar psi(c);
  int done = 0;
  for (uint64_t seed = 1; seed < 40 && done < 4; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 1, seed);
    if (which_space(gamma) != Space::V0) continue;
    NormalFormUnitary g = transport_to_unitary(gamma);
    BesselFrame F = BesselFrame::make(c, 1, 0);
    herm::Lattice bl = bound_lattice(F, g);
    Mat G = g.embed(c);
    Mat Gi = G.inverse();
    // scan a strictly larger window and verify pair-contributors contain bl
    herm::Lattice low = bl.scaled(1);
    herm::Lattice top = herm::dual_lattice(F.space, low);
    if (!top.contains(low)) continue;
    if (herm::window_exponent(F.space, low) > 8) continue;
    for (const auto& Lp : herm::self_dual_bruteforce(F.space, low)) {
      auto fdp = herm::flag_data(F, Lp);
      if (!fdp) continue;
      herm::Lattice L = Lp.apply(Gi);
      if (!herm::is_self_dual(F.space, L)) continue;
      auto fd = herm::flag_data(F, L);
      if (!fd) continue;
      if (!(fd->flat == fdp->flat)) continue;
      CHECK(Lp.contains(bl));
    }
    ++done;
  }
  CHECK(done >= 2);
}

TEST_CASE("psi covariance of the lattice weight under unipotents") {
  auto c = c3();
  PsiChar psi(c);
  BesselFrame F = BesselFrame::make(c, 1, 1);
  SplitMix64 rng(5150);
  herm::Lattice std4 = herm::Lattice::standard(c, 4);
  for (int trial = 0; trial < 50; ++trial) {
    // unitary Bessel unipotent n(b, c), possibly non-integral
    int n = 4, m = 1;
    std::vector<Fe> b((size_t)(m + 1), Fe::zero(c));
    for (int i = 0; i <= m; ++i)
      b[(size_t)i] = Fe::from_parts(c, rng.range(-1, 1), (long long)rng.below(9),
                                    (long long)rng.below(9));
    Fe nb = Fe::zero(c);
    for (int i = 0; i <= m; ++i) nb = nb + b[(size_t)i].norm();
    Fe cc = -(nb * Fe::integer(c, 2).inv()) +
            Fe::from_parts(c, rng.range(-1, 1), (long long)rng.below(9), 0) * Fe::omega(c);
    Mat u = Mat::identity(n, c);
    for (int i = 0; i <= m; ++i) u.at(1 + i, n - 1) = b[(size_t)i];
    u.at(0, n - 1) = cc;
    for (int j = 0; j <= m; ++j) u.at(0, 1 + j) = -b[(size_t)j].conj();
    REQUIRE(in_unitary_group(F, u));
    herm::Lattice uL = std4.apply(u);
    auto fd = herm::flag_data(F, uL);
    REQUIRE(fd.has_value());
    // lambda(u) is the (e_1, v)-entry sum; here u moves only the dual column,
    // so lambda(u) = first-superdiagonal entry of the flag coset
    Cyc lhs = herm::psi_of_lattice(F, psi, uL);
    Fe lam = herm::lambda_of_flag(F, fd->flag_coset);
    CHECK(lhs == psi(lam));
    // multiplicativity against a second translate
    Mat u2 = Mat::identity(n, c);
    Fe a21 = Fe::from_parts(c, -1, (long long)(1 + rng.below(2)), (long long)rng.below(3));
    u2.at(0, 1) = a21;
    u2.at(1, n - 1) = -a21.conj();
    u2.at(0, n - 1) = -(a21.norm() * Fe::integer(c, 2).inv());
    REQUIRE(in_unitary_group(F, u2));
    herm::Lattice u2uL = uL.apply(u2);
    auto fd2 = herm::flag_data(F, u2uL);
    if (!fd2) continue;
    Cyc lhs2 = herm::psi_of_lattice(F, psi, u2uL);
    CHECK(lhs2 == psi(a21) * lhs);
  }
}

TEST_CASE("orbital covariance under a Bessel pair translation") {
  auto c = c3();
  PsiChar psi(c);
  BesselFrame F = BesselFrame::make(c, 1, 1);
  int done = 0;
  for (uint64_t seed = 700; seed < 760 && done < 3; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 1, 1, seed);
    gamma.t[0] = Fe::from_parts(c, 0, 1, (long long)(seed % 3));
    if (which_space(gamma) != Space::V0) continue;
    NormalFormUnitary g = transport_to_unitary(gamma);
    Mat G = g.embed(c);
    UnitaryOrbital base = orb_unitary(F, psi, g);
    // left translation by n1 in N(F_0): the pair (n1, 1) acts with character
    // value psi(-lambda(n1)), so Orb(n1^{-1} g) = psi(lambda(n1)) Orb(g)
    Fe a21 = Fe::from_parts(c, -1, 1 + (long long)(seed % 2), 0);
    Mat n1 = Mat::identity(4, c);
    n1.at(0, 1) = a21;
    n1.at(1, 3) = -a21.conj();
    n1.at(0, 3) = -(a21.norm() * Fe::integer(c, 2).inv());
    REQUIRE(in_unitary_group(F, n1));
    Mat Gt = n1.inverse() * G;
    // brute-force the translated sum over the transported window
    NormalFormUnitary gi;
    gi.m = g.m;
    gi.r = g.r;
    for (const Fe& t : g.t) gi.t.push_back(t.conj());
    gi.core = g.core.inverse();
    herm::Lattice low =
        bound_lattice(F, g).sum(bound_lattice(F, gi).apply(G)).apply(n1.inverse());
    herm::Lattice top = herm::dual_lattice(F.space, low);
    if (!top.contains(low) || herm::window_exponent(F.space, low) > 8) continue;
    Mat Gti = Gt.inverse();
    Cyc translated = Cyc::zero(3);
    for (const auto& Lp : herm::self_dual_bruteforce(F.space, low)) {
      auto fdp = herm::flag_data(F, Lp);
      if (!fdp) continue;
      herm::Lattice L = Lp.apply(Gti);
      if (!herm::is_self_dual(F.space, L)) continue;
      auto fd = herm::flag_data(F, L);
      if (!fd) continue;
      if (!(fd->flat == fdp->flat)) continue;
      translated += psi(herm::lambda_of_flag(F, fd->flag_coset)) *
                    psi(herm::lambda_of_flag(F, fdp->flag_coset)).conj();
    }
    CHECK(translated == psi(a21) * base.value);
    ++done;
  }
  CHECK(done >= 2);
}

TEST_CASE("galois equivariance of orbital values under psi twists") {
  auto c = c3();
  PsiChar psi1(c, 1), psi2(c, 2);
  int done = 0;
  for (uint64_t seed = 40; seed < 70 && done < 4; ++seed) {
    NormalFormSymmetric gamma = gamma_instance(c, 1, 1, 1, seed);
    SymOrbital s1 = orb_symmetric(c, psi1, gamma);
    SymOrbital s2 = orb_symmetric(c, psi2, gamma);
    CHECK(s2.poly == s1.poly.galois(2));
    if (which_space(gamma) == Space::V0) {
      NormalFormUnitary g = transport_to_unitary(gamma);
      BesselFrame F = BesselFrame::make(c, 1, 1);
      UnitaryOrbital u1 = orb_unitary(F, psi1, g);
      UnitaryOrbital u2 = orb_unitary(F, psi2, g);
      CHECK(u2.value == u1.value.galois(2));
    }
    ++done;
  }
  CHECK(done == 4);
}

TEST_CASE("partition independence of enumeration sums") {
  auto c = c3();
  // worker counts must not change the self-dual stream
  herm::HermSpace V = herm::split_space(c, 2);
  herm::Lattice low = herm::Lattice::standard(c, 2).scaled(1);
  auto seq = herm::enumerate_self_dual(V, low, 20, nullptr, 1);
  auto par = herm::enumerate_self_dual(V, low, 20, nullptr, 3);
  REQUIRE(seq.size() == par.size());
  for (size_t i = 0; i < seq.size(); ++i) CHECK(seq[i] == par[i]);
  // exact commutative reduction: chunked partial sums equal the total
  PsiChar psi(c);
  NormalFormSymmetric gamma = gamma_instance(c, 1, 1, 1, 41);
  SymOrbital s = orb_symmetric_cosets(c, psi, gamma);
  Cyc direct = s.poly.value_at_zero();
  Cyc chunked = Cyc::zero(3);
  std::vector<Cyc> parts;
  for (auto& [v, cc] : s.poly.terms) parts.push_back(cc);
  for (size_t i = 0; i < parts.size(); i += 2) {
    Cyc acc = parts[i];
    if (i + 1 < parts.size()) acc += parts[i + 1];
    chunked += acc;
  }
  CHECK(chunked == direct);
}

TEST_CASE("special values and derivative bookkeeping") {
  auto c = c3();
  OrbPoly poly = OrbPoly::zero(3);
  poly.add_term(0, Cyc::one(3));
  CHECK(poly.value_at_zero() == Cyc::one(3));
  CHECK(poly.derivative_coefficient().is_zero());
  OrbPoly xm1 = OrbPoly::zero(3);
  xm1.add_term(1, Cyc::one(3));
  xm1.add_term(0, -Cyc::one(3));
  CHECK(xm1.value_at_zero().is_zero());
  CHECK(xm1.derivative_coefficient() == Cyc::one(3));
  // omega scaling through orb_special_values
  NormalFormSymmetric gamma = gamma_instance(c, 1, 0, 1, 7);
  PsiChar psi(c);
  SymOrbital s = orb_symmetric(c, psi, gamma);
  TransferPolicy pol;  // jr-standard
  SpecialValues sv = orb_special_values(c, s, gamma, pol);
  CHECK(sv.orb == s.poly.value_at_zero().scaled(sv.omega));
  CHECK(sv.dorb_coeff == s.poly.derivative_coefficient().scaled(-sv.omega));
}
