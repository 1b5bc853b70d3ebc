#pragma once

#include "hermlat/enumerate.hpp"
#include "orbint/orbpoly.hpp"
#include "orbit/normal_form.hpp"

namespace orbital::integrals {

using herm::BesselFrame;
using herm::Lattice;
using orbit::NormalFormUnitary;
using padic::Cyc;
using padic::PsiChar;

struct OrbOptions {
  long long cap_exponent = 20;  // |low^dual/low| <= p^{2 cap}
  int saturation_checks = 2;    // extra window enlargements that must agree
  int workers = 1;
};

// The bounding lattice: every self-dual pair contributing to the unitary
// orbital sum contains it. Built from p^M <v, gv, ..., g^m v> together with
// p^N (E-flag + g E-flag).
Lattice bound_lattice(const BesselFrame& F, const NormalFormUnitary& g);

struct UnitaryOrbital {
  Cyc value;
  SupportReport support;
};

// Orb(g, 1_K) on the split space as a psi-weighted count of self-dual pairs
// (Lambda, Lambda' = g Lambda) with matching flat parts. Exact.
UnitaryOrbital orb_unitary(const BesselFrame& F, const PsiChar& psi, const NormalFormUnitary& g,
                           const OrbOptions& opt = {});

// independent reference: same sum evaluated over a brute-force window scan
// (practical only when the window quotient is small)
Cyc orb_unitary_bruteforce(const BesselFrame& F, const PsiChar& psi, const NormalFormUnitary& g,
                           int extra_window = 1);

}  // namespace orbital::integrals
