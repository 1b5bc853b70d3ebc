#include "orbint/verify.hpp"

namespace orbital::integrals {

using padic::Fe;

long long krylov_det_val(const Mat& core) {
  const Ctx& c = core.ctx();
  int mp1 = core.rows();
  Mat K(mp1, mp1, c);
  Mat pw = Mat::identity(mp1, c);
  for (int j = 0; j < mp1; ++j) {
    for (int i = 0; i < mp1; ++i) K.at(i, j) = pw.at(i, 0);
    pw = core * pw;
  }
  return K.det().valuation();
}

int jr_transfer_sign(const Mat& core) {
  return (krylov_det_val(core) % 2 == 0) ? 1 : -1;
}

TransferPolicy TransferPolicy::by_name(const std::string& name) {
  TransferPolicy p;
  if (name == "unit")
    p.mode = Mode::Unit;
  else if (name == "jr-standard" || name.empty())
    p.mode = Mode::JrStandard;
  else if (name == "custom")
    p.mode = Mode::Custom;
  else
    throw ConfigError("unknown transfer-factor mode: " + name);
  return p;
}

std::string TransferPolicy::name() const {
  switch (mode) {
    case Mode::Unit: return "unit";
    case Mode::JrStandard: return "jr-standard";
    case Mode::Custom: return "custom";
  }
  return "?";
}

std::pair<int, bool> TransferPolicy::evaluate(const NormalFormSymmetric& g) const {
  switch (mode) {
    case Mode::Unit:
      return {1, false};
    case Mode::JrStandard: {
      bool units = true;
      for (const Fe& t : g.t)
        if (t.valuation() != 0) units = false;
      if (g.r == 0) return {jr_transfer_sign(g.core), true};
      // unit corners reduce to the (m, m+1) case, where the core factor is
      // the calibrated one; anything else is uncalibrated
      return {units ? jr_transfer_sign(g.core) : 1, units};
    }
    case Mode::Custom: {
      long long e = krylov_coeff * krylov_det_val(g.core);
      for (size_t i = 0; i < g.t.size() && i < t_coeffs.size(); ++i)
        e += t_coeffs[i] * g.t[i].valuation();
      int w = (e % 2 == 0) ? sign : -sign;
      return {w, true};
    }
  }
  return {1, false};
}

SpecialValues orb_special_values(const Ctx& c, const SymOrbital& sym,
                                 const NormalFormSymmetric& g, const TransferPolicy& policy) {
  if (!sym.support.saturated) throw SaturationFailed("special values need a saturated sum");
  auto [omega, calibrated] = policy.evaluate(g);
  SpecialValues out;
  out.omega = omega;
  out.omega_calibrated = calibrated;
  out.orb = sym.poly.value_at_zero().scaled(omega);
  // d/ds|_0 = -(log q) sum v c_v; report the log q coefficient
  out.dorb_coeff = sym.poly.derivative_coefficient().scaled(-omega);
  return out;
}

FLReport verify_fl(const Ctx& c, const PsiChar& psi, const NormalFormSymmetric& gamma,
                   const VerifyOptions& opt) {
  if (!orbit::is_regular(gamma)) throw NotRegular("verify_fl requires a regular element");
  FLReport rep;
  rep.space = orbit::which_space(gamma);
  rep.transfer_mode = opt.policy.name();
  bool unit_corners = true;
  for (const Fe& t : gamma.t)
    if (t.valuation() != 0) unit_corners = false;

  SymOrbital sym = orb_symmetric(c, psi, gamma, opt.sym);
  rep.poly = sym.poly;
  rep.sym_support = sym.support;
  SpecialValues sv = orb_special_values(c, sym, gamma, opt.policy);
  rep.omega = sv.omega;
  rep.omega_calibrated = sv.omega_calibrated;
  rep.dorb_coeff = sv.dorb_coeff;

  if (rep.space == Space::V1) {
    // the transferred pair is (1_K, 0): the unitary side is 0 by definition
    rep.provenance = Provenance::Theorem;  // vanishing is proved for all r
    rep.lhs = sym.poly.value_at_zero();    // omega-independent statement
    rep.rhs = Cyc::zero(c->p);
    rep.equal = rep.lhs == rep.rhs;
    return rep;
  }
  rep.provenance =
      (gamma.r == 0 || unit_corners) ? Provenance::Theorem : Provenance::Conjectural;
  NormalFormUnitary g = orbit::transport_to_unitary(gamma);
  BesselFrame F = BesselFrame::make(c, gamma.m, gamma.r);
  UnitaryOrbital uni = orb_unitary(F, psi, g, opt.uni);
  rep.uni_support = uni.support;
  rep.lhs = sv.orb;
  rep.rhs = uni.value;
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace orbital::integrals
