#pragma once

#include <optional>
#include <string>

#include "orbint/orbital.hpp"
#include "orbint/symmetric.hpp"

namespace orbital::integrals {

using orbit::Space;

// Transfer factor policy. The factor itself lives in an external reference;
// here it is pluggable:
//   unit        - omega == 1
//   jr-standard - (-1)^{val det(e, xi e, ..., xi^m e)} on the core block,
//                 the standard normalization for r = 0; for r > 0 it is used
//                 only when all t_i are units (where the unit-corner
//                 reduction applies) and flagged otherwise
//   custom      - sign * (-1)^{c_kry * val Delta + sum_i c_i val t_i}
struct TransferPolicy {
  enum class Mode { Unit, JrStandard, Custom };
  Mode mode = Mode::JrStandard;
  // custom parameters
  int sign = 1;
  int krylov_coeff = 0;
  std::vector<int> t_coeffs;

  static TransferPolicy by_name(const std::string& name);
  std::string name() const;

  // (omega, calibrated?) for the given element
  std::pair<int, bool> evaluate(const NormalFormSymmetric& g) const;
};

// (-1)^{val det K}, K the Krylov matrix of the core block
int jr_transfer_sign(const Mat& core);

struct SpecialValues {
  Cyc orb;         // omega * Orb(gamma, f', 0)
  Cyc dorb_coeff;  // coefficient of log q in omega * d/ds|_0 Orb
  int omega = 1;
  bool omega_calibrated = true;
};

SpecialValues orb_special_values(const Ctx& c, const SymOrbital& sym,
                                 const NormalFormSymmetric& g, const TransferPolicy& policy);

enum class Provenance { Theorem, Conjectural };

struct FLReport {
  Space space = Space::V0;
  Provenance provenance = Provenance::Conjectural;
  bool equal = false;        // omega Orb_sym(0) == Orb_uni (or vanishing on V1)
  Cyc lhs, rhs;              // the two compared values
  Cyc dorb_coeff;            // derivative coefficient (reported, not interpreted)
  OrbPoly poly;
  SupportReport sym_support, uni_support;
  int omega = 1;
  bool omega_calibrated = true;
  std::string transfer_mode;
};

struct VerifyOptions {
  SymOptions sym;
  OrbOptions uni;
  TransferPolicy policy;
};

// Decide the matching space, compute both sides, compare. V1: the unitary
// side is 0 by the shape of the transferred pair; the symmetric value must
// vanish (a theorem). V0: construct the matched unitary element by moment
// transport and compare exactly.
FLReport verify_fl(const Ctx& c, const PsiChar& psi, const NormalFormSymmetric& gamma,
                   const VerifyOptions& opt = {});

}  // namespace orbital::integrals
