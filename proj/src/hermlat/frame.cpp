#include "hermlat/frame.hpp"

namespace orbital::herm {

using padic::Fe;

BesselFrame BesselFrame::make(const padic::Ctx& c, int m, int r) {
  if (m < 1) throw ConfigError("Bessel frame requires m >= 1");
  if (r < 0) throw ConfigError("Bessel frame requires r >= 0");
  BesselFrame F;
  F.m = m;
  F.r = r;
  int n = m + 1 + 2 * r;
  Mat J(n, n, c);
  Fe one = Fe::integer(c, 1);
  for (int i = 0; i < r; ++i) {
    J.at(i, n - 1 - i) = one;
    J.at(n - 1 - i, i) = one;
  }
  J.at(r, r) = one;
  for (int l = 0; l < m; ++l) J.at(r + 1 + l, r + 1 + l) = one;
  F.space = HermSpace{c, n, J};
  return F;
}

HermSpace BesselFrame::wsharp_space() const {
  const padic::Ctx& c = space.ctx;
  Mat J(m + 1, m + 1, c);
  for (int i = 0; i <= m; ++i) J.at(i, i) = Fe::integer(c, 1);
  return HermSpace{c, m + 1, J};
}

HermSpace split_space(const padic::Ctx& c, int n) {
  Mat J(n, n, c);
  for (int i = 0; i < n; ++i) J.at(i, i) = Fe::integer(c, 1);
  return HermSpace{c, n, J};
}

HermSpace nonsplit_space(const padic::Ctx& c, int n) {
  Mat J(n, n, c);
  for (int i = 0; i + 1 < n; ++i) J.at(i, i) = Fe::integer(c, 1);
  J.at(n - 1, n - 1) = Fe::from_parts(c, 1, 1, 0);  // norm p
  return HermSpace{c, n, J};
}

std::optional<FlagData> flag_data(const BesselFrame& F, const Lattice& L) {
  const padic::Ctx& c = L.ctx();
  int r = F.r, m = F.m;
  // framed condition: E_i ∩ Λ has framed graded generators, i.e. the first
  // r+1 pivots of the canonical triangular basis are p^0
  for (int i = 0; i <= r; ++i)
    if (L.pivot_val(i) != 0) return std::nullopt;
  FlagData out;
  out.flag_coset = Mat::identity(r + 1, c);
  for (int j = 0; j <= r; ++j)
    for (int i = 0; i < j; ++i) out.flag_coset.at(i, j) = L.basis().at(i, j);
  out.wsharp = L.graded_band(r, r + 1 + m);
  // the graded image of column r is the special vector e itself, so e lies in
  // Λ^sharp; self-duality of Λ^sharp (graded piece of a self-dual lattice
  // along a self-dual filtration) then splits off its orthogonal complement
  std::vector<int> wcoords;
  for (int l = 1; l <= m; ++l) wcoords.push_back(l);
  out.flat = out.wsharp.intersect_coords(wcoords);
  return out;
}

Fe lambda_of_flag(const BesselFrame& F, const Mat& u) {
  const padic::Ctx& c = u.ctx();
  Fe s = Fe::zero(c);
  for (int i = 0; i + 1 <= F.r; ++i) s = s + u.at(i, i + 1);
  return s;
}

Cyc psi_of_lattice(const BesselFrame& F, const PsiChar& psi, const Lattice& L) {
  auto fd = flag_data(F, L);
  if (!fd) throw Error("psi_of_lattice: lattice not in the framed set");
  return psi(lambda_of_flag(F, fd->flag_coset));
}

}  // namespace orbital::herm
