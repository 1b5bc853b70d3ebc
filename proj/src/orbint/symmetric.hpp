#pragma once

#include "hermlat/lattice.hpp"
#include "orbint/orbpoly.hpp"
#include "orbit/normal_form.hpp"

namespace orbital::integrals {

using herm::Lattice;
using orbit::NormalFormSymmetric;
using padic::Cyc;
using padic::Ctx;
using padic::Fe;
using padic::Mat;
using padic::PsiChar;

struct SymOptions {
  long long a_window = 2;       // initial window on the Levi lattice classes
  int saturation_checks = 2;    // window enlargements that must agree
  int max_growth = 6;           // give up (SaturationFailed) past this
  long long cap_candidates = 50000000;
};

struct SymOrbital {
  OrbPoly poly;
  SupportReport support;
};

// Orb(gamma, 1_{S_n(O)}, s) as an exact coset sum over
// H'(F_0)/H'(O_{F_0}): pairs (Levi lattice class a, unipotent residue class
// u mod a U(O_F) a^{-1}), weighted by psi(lambda'(u'(h))) eta(det a)
// X^{val det a}. Supported for r <= 1.
SymOrbital orb_symmetric_cosets(const Ctx& c, const PsiChar& psi, const NormalFormSymmetric& g,
                                const SymOptions& opt = {});

// Same value through the lattice reformulation: the support condition reads
// gamma conj(Lambda) = Lambda for Lambda = h O_F^n, and the weights are read
// off the canonical form of Lambda. Supported for r <= 1.
SymOrbital orb_symmetric_lattices(const Ctx& c, const PsiChar& psi, const NormalFormSymmetric& g,
                                  const SymOptions& opt = {});

// Runs both engines and insists on exact agreement.
SymOrbital orb_symmetric(const Ctx& c, const PsiChar& psi, const NormalFormSymmetric& g,
                         const SymOptions& opt = {});

}  // namespace orbital::integrals
