#include "orbit/normal_form.hpp"

#include "core/util.hpp"
#include "padic/solve.hpp"

namespace orbital::orbit {

Mat NormalForm::embed(const Ctx& c) const {
  int nn = n();
  Mat g(nn, nn, c);
  for (int i = 0; i < r; ++i) {
    g.at(nn - 1 - i, i) = t[(size_t)i].conj().inv();
    g.at(i, nn - 1 - i) = t[(size_t)i];
  }
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b) g.at(r + a, r + b) = core.at(a, b);
  return g;
}

bool in_unitary_group(const BesselFrame& F, const Mat& g) {
  const Mat& J = F.space.gram;
  Mat lhs = g.transpose() * J * g.conj();
  Fe zero = Fe::zero(g.ctx());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.rows(); ++j)
      if (!(lhs.at(i, j) - J.at(i, j)).eq(zero)) return false;
  return true;
}

bool in_symmetric_space(const Mat& g) {
  return (g * g.conj()).is_identity();
}

namespace {

// nonzero/zero/undecided classification of a corner entry
enum class EntryClass { Zero, NonZero, Undecided };
EntryClass classify(const Fe& x) {
  switch (x.kind()) {
    case Fe::Kind::ExactZero: return EntryClass::Zero;
    case Fe::Kind::Unit: return EntryClass::NonZero;
    case Fe::Kind::ZeroMod:
      return x.absprec() >= x.ctx()->precision / 2 ? EntryClass::Zero : EntryClass::Undecided;
  }
  return EntryClass::Undecided;
}

Fe corner_or_throw(const Mat& g, bool* ok = nullptr) {
  const Fe& c = g.at(g.rows() - 1, 0);
  switch (classify(c)) {
    case EntryClass::NonZero:
      if (ok) *ok = true;
      return c;
    case EntryClass::Zero:
      if (ok) { *ok = false; return c; }
      throw NotPreRegular("vanishing corner invariant");
    case EntryClass::Undecided:
      throw PrecisionExhausted("corner invariant undetermined");
  }
  throw PrecisionExhausted("unreachable");
}

Mat middle_block(const Mat& g) {
  int n = g.rows();
  Mat b(n - 2, n - 2, g.ctx());
  for (int i = 0; i + 2 < n; ++i)
    for (int j = 0; j + 2 < n; ++j) b.at(i, j) = g.at(i + 1, j + 1);
  return b;
}

void check_normal_pattern(const Mat& g, const Fe& t) {
  int n = g.rows();
  const Ctx& c = g.ctx();
  Fe zero = Fe::zero(c);
  for (int j = 1; j + 1 < n; ++j) {
    if (!g.at(0, j).eq(zero) || !g.at(n - 1, j).eq(zero) || !g.at(j, 0).eq(zero) ||
        !g.at(j, n - 1).eq(zero))
      throw Error("normal form pattern violated (internal)");
  }
  if (!g.at(0, 0).eq(zero) || !g.at(n - 1, n - 1).eq(zero)) {
    throw Error("normal form pattern violated (corner)");
  }
  if (!g.at(0, n - 1).eq(t) || !g.at(n - 1, 0).eq(t.conj().inv()))
    throw Error("normal form corner mismatch");
}

// symmetric-side peeling step: returns (t_1, middle) after one corner
std::pair<Fe, Mat> peel_symmetric(const Mat& gamma) {
  int n = gamma.rows();
  const Ctx& c = gamma.ctx();
  Fe corner = corner_or_throw(gamma);
  Fe t = corner.conj().inv();
  Fe tbar = t.conj();
  // u1: identity except the last column gets tbar * gamma e_0 (unipotent since
  // the bottom entry is tbar * corner = 1)
  Mat u1 = Mat::identity(n, c);
  for (int i = 0; i + 1 < n; ++i) u1.at(i, n - 1) = tbar * gamma.at(i, 0);
  Mat u1i = Mat::identity(n, c);
  for (int i = 0; i + 1 < n; ++i) u1i.at(i, n - 1) = -u1.at(i, n - 1);
  Mat g1 = u1i * gamma * u1.conj();
  // u2: row 0 over middle columns kills the bottom row's middle entries
  Mat u2 = Mat::identity(n, c);
  for (int j = 1; j + 1 < n; ++j) u2.at(0, j) = (-(g1.at(n - 1, j) * tbar)).conj();
  Mat u2i = Mat::identity(n, c);
  for (int j = 1; j + 1 < n; ++j) u2i.at(0, j) = -u2.at(0, j);
  Mat g2 = u2i * g1 * u2.conj();
  check_normal_pattern(g2, t);
  return {t, middle_block(g2)};
}

// unitary-side stage unipotent of shape [[1, a, c], [0, I, b], [0, 0, 1]]
// with a = -conj(b)^T J_B and tr(c) = -(b, b)_{J_B}
Mat stage_unipotent(const Ctx& c, const Mat& JB, const std::vector<Fe>& b, const Fe& cc) {
  int nb = JB.rows();
  int n = nb + 2;
  Mat u = Mat::identity(n, c);
  for (int i = 0; i < nb; ++i) u.at(i + 1, n - 1) = b[(size_t)i];
  u.at(0, n - 1) = cc;
  // a-row
  for (int j = 0; j < nb; ++j) {
    Fe s = Fe::zero(c);
    for (int i = 0; i < nb; ++i) s = s + b[(size_t)i].conj() * JB.at(i, j);
    u.at(0, j + 1) = -s;
  }
  return u;
}

std::pair<Fe, Mat> peel_unitary(const Mat& JB, const Mat& g) {
  int n = g.rows();
  const Ctx& c = g.ctx();
  Fe corner = corner_or_throw(g);
  Fe t = corner.conj().inv();
  Fe tbar = t.conj();
  // left move: realize n1 with last column tbar * g e_0
  std::vector<Fe> b1;
  for (int i = 0; i < n - 2; ++i) b1.push_back(tbar * g.at(i + 1, 0));
  Fe c1 = tbar * g.at(0, 0);
  Mat n1 = stage_unipotent(c, JB, b1, c1);
  Mat g1 = n1.inverse() * g;
  // right move: choose b to clear the middle of the last column, then c
  Mat GB = middle_block(g1);
  std::vector<Fe> rhs;
  for (int i = 0; i < n - 2; ++i) rhs.push_back(g1.at(i + 1, n - 1));
  Mat GBi = GB.inverse();
  std::vector<Fe> b2((size_t)(n - 2), Fe::zero(c));
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j)
      b2[(size_t)i] = b2[(size_t)i] - GBi.at(i, j) * rhs[(size_t)j];
  // c from the (n-1, n-1) entry: (g1 n2 e_{n-1})_{n-1} = 0
  Fe acc = g1.at(n - 1, n - 1);
  for (int j = 0; j < n - 2; ++j) acc = acc + g1.at(n - 1, j + 1) * b2[(size_t)j];
  Fe c2 = -(tbar * acc);
  Mat n2 = stage_unipotent(c, JB, b2, c2);
  Mat g2 = g1 * n2;
  check_normal_pattern(g2, t);
  return {t, middle_block(g2)};
}

// J_B for the next stage: strip the first and last row/column
Mat inner_gram(const Mat& J) {
  return middle_block(J);
}

}  // namespace

NormalFormSymmetric normalize_symmetric(int m, int r, const Mat& gamma) {
  if (!in_symmetric_space(gamma)) throw Error("input not in the symmetric space");
  Mat g = gamma;
  NormalForm nf;
  nf.m = m;
  nf.r = r;
  for (int i = 0; i < r; ++i) {
    auto [t, mid] = peel_symmetric(g);
    nf.t.push_back(t);
    g = mid;
  }
  nf.core = g;
  if (!in_symmetric_space(nf.core)) throw Error("core block not in S_{m+1} (internal)");
  return nf;
}

NormalFormUnitary normalize_unitary(const BesselFrame& F, const Mat& g0) {
  if (!in_unitary_group(F, g0)) throw Error("input not in the unitary group");
  Mat g = g0;
  Mat J = F.space.gram;
  NormalForm nf;
  nf.m = F.m;
  nf.r = F.r;
  for (int i = 0; i < F.r; ++i) {
    Mat JB = inner_gram(J);
    auto [t, mid] = peel_unitary(JB, g);
    nf.t.push_back(t);
    g = mid;
    J = JB;
  }
  nf.core = g;
  return nf;
}

bool is_pre_regular_symmetric(int m, int r, const Mat& gamma) {
  try {
    normalize_symmetric(m, r, gamma);
    return true;
  } catch (const NotPreRegular&) {
    return false;
  }
}

bool is_pre_regular_unitary(const BesselFrame& F, const Mat& g) {
  try {
    normalize_unitary(F, g);
    return true;
  } catch (const NotPreRegular&) {
    return false;
  }
}

MatchInvariants match_invariants(const Mat& core) {
  MatchInvariants mi;
  mi.charpoly = core.charpoly();
  int m = core.rows() - 1;
  const Ctx& c = core.ctx();
  Mat pw = Mat::identity(m + 1, c);
  for (int k = 0; k <= 2 * m; ++k) {
    mi.moments.push_back(pw.at(0, 0));
    pw = core * pw;
  }
  return mi;
}

bool MatchInvariants::equals(const MatchInvariants& o) const {
  if (charpoly.size() != o.charpoly.size() || moments.size() != o.moments.size()) return false;
  for (size_t i = 0; i < charpoly.size(); ++i)
    if (!charpoly[i].eq(o.charpoly[i])) return false;
  for (size_t i = 0; i < moments.size(); ++i)
    if (!moments[i].eq(o.moments[i])) return false;
  return true;
}

bool is_regular_core(const Mat& core) {
  int m = core.rows() - 1;
  const Ctx& c = core.ctx();
  MatchInvariants mi = match_invariants(core);
  Mat M(m + 1, m + 1, c);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) M.at(i, j) = mi.moments[(size_t)(i + j)];
  Fe d = M.det();
  switch (d.kind()) {
    case Fe::Kind::Unit: return true;
    case Fe::Kind::ExactZero: return false;
    case Fe::Kind::ZeroMod:
      if (d.absprec() >= c->precision / 2) return false;
      throw PrecisionExhausted("moment determinant undetermined");
  }
  return false;
}

bool matches(const NormalFormUnitary& g, const NormalFormSymmetric& gamma) {
  if (g.m != gamma.m || g.r != gamma.r) return false;
  if (!is_regular_core(g.core) || !is_regular_core(gamma.core))
    throw NotRegular("matching requires regular elements");
  for (int i = 0; i < g.r; ++i)
    if (!g.t[(size_t)i].eq(gamma.t[(size_t)i])) return false;
  return match_invariants(g.core).equals(match_invariants(gamma.core));
}

Mat moment_gram(const Mat& core) {
  int m = core.rows() - 1;
  const Ctx& c = core.ctx();
  MatchInvariants mi = match_invariants(core);
  Mat H(m + 1, m + 1, c);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      int k = i - j;
      H.at(i, j) = k >= 0 ? mi.moments[(size_t)k] : mi.moments[(size_t)(-k)].conj();
    }
  return H;
}

Space which_space(const NormalFormSymmetric& gamma) {
  if (!is_regular_core(gamma.core)) throw NotRegular("which_space requires a regular element");
  Fe d = moment_gram(gamma.core).det();
  return (padic::eta_value(d) == 1) ? Space::V0 : Space::V1;
}

namespace {

// H-orthonormal basis (columns) with first column e_0; requires H_{00} = 1
// and eta(det H) = +1
Mat split_isometry(const Mat& H) {
  const Ctx& c = H.ctx();
  int n = H.rows();
  auto pair_of = [&](const std::vector<Fe>& x, const std::vector<Fe>& y) {
    Fe s = Fe::zero(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (x[(size_t)i].is_exact_zero() || H.at(i, j).is_exact_zero() ||
            y[(size_t)j].is_exact_zero())
          continue;
        s = s + x[(size_t)i] * H.at(i, j) * y[(size_t)j].conj();
      }
    return s;
  };
  std::vector<std::vector<Fe>> basis;  // chosen so far (pairwise orthogonal)
  std::vector<Fe> norms;
  std::vector<std::vector<Fe>> rest;
  for (int j = 0; j < n; ++j) {
    std::vector<Fe> v((size_t)n, Fe::zero(c));
    v[(size_t)j] = Fe::integer(c, 1);
    rest.push_back(std::move(v));
  }
  auto project_out = [&](std::vector<Fe> v) {
    for (size_t k = 0; k < basis.size(); ++k) {
      Fe coef = pair_of(v, basis[k]) * norms[k].inv();
      for (int i = 0; i < n; ++i) v[(size_t)i] = v[(size_t)i] - coef * basis[k][(size_t)i];
    }
    return v;
  };
  auto is_nonzero = [&](const Fe& x) { return classify(x) == EntryClass::NonZero; };
  while ((int)basis.size() < n) {
    std::optional<std::vector<Fe>> pick;
    if (basis.empty()) {
      pick = rest.front();  // e_0, norm H_{00} = 1
    } else {
      for (auto& cand : rest) {
        auto v = project_out(cand);
        bool dep = true;
        for (auto& e : v)
          if (classify(e) != EntryClass::Zero) dep = false;
        if (dep) continue;
        if (is_nonzero(pair_of(v, v))) {
          pick = v;
          break;
        }
      }
      if (!pick) {
        // all residual vectors isotropic: mix two of them
        std::vector<std::vector<Fe>> resid;
        for (auto& cand : rest) {
          auto v = project_out(cand);
          bool dep = true;
          for (auto& e : v)
            if (classify(e) != EntryClass::Zero) dep = false;
          if (!dep) resid.push_back(v);
        }
        Fe w = padic::Fe::omega(c);
        for (size_t a = 0; a < resid.size() && !pick; ++a)
          for (size_t b = a + 1; b < resid.size() && !pick; ++b) {
            for (const Fe& mixer : {Fe::integer(c, 1), w}) {
              std::vector<Fe> v = resid[a];
              for (int i = 0; i < n; ++i)
                v[(size_t)i] = v[(size_t)i] + mixer * resid[b][(size_t)i];
              if (is_nonzero(pair_of(v, v))) {
                pick = v;
                break;
              }
            }
          }
        if (!pick) throw MatchConstructionFailed("no anisotropic vector found");
      }
    }
    basis.push_back(*pick);
    norms.push_back(pair_of(*pick, *pick));
  }
  // rescale to norm one, pairing odd-valuation pivots
  std::vector<int> odd;
  for (int i = 0; i < n; ++i) {
    if (norms[(size_t)i].valuation() % 2 != 0)
      odd.push_back(i);
  }
  if (odd.size() % 2 != 0) throw MatchConstructionFailed("determinant class is non-split");
  for (size_t k = 0; k + 1 < odd.size(); k += 2) {
    int i = odd[k], j = odd[k + 1];
    auto [x, y] = padic::binary_norm_solve(c, norms[(size_t)i], norms[(size_t)j]);
    std::vector<Fe> u((size_t)n, Fe::zero(c));
    for (int a = 0; a < n; ++a)
      u[(size_t)a] = x * basis[(size_t)i][(size_t)a] + y * basis[(size_t)j][(size_t)a];
    // (u,u) = 1; replace basis i by u and re-orthogonalize j against it
    std::vector<Fe> v = basis[(size_t)j];
    Fe coef = pair_of(v, u);  // / 1
    for (int a = 0; a < n; ++a) v[(size_t)a] = v[(size_t)a] - coef * u[(size_t)a];
    basis[(size_t)i] = u;
    norms[(size_t)i] = Fe::integer(c, 1);
    basis[(size_t)j] = v;
    norms[(size_t)j] = pair_of(v, v);
    if (norms[(size_t)j].valuation() % 2 != 0)
      throw MatchConstructionFailed("pairing step failed to fix parity");
  }
  for (int i = 0; i < n; ++i) {
    if (norms[(size_t)i].eq(Fe::integer(c, 1))) continue;
    Fe z = padic::norm_solve(c, norms[(size_t)i]);
    Fe zi = z.inv();
    for (int a = 0; a < n; ++a) basis[(size_t)i][(size_t)a] = basis[(size_t)i][(size_t)a] * zi;
    norms[(size_t)i] = Fe::integer(c, 1);
  }
  Mat U(n, n, c);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) U.at(i, j) = basis[(size_t)j][(size_t)i];
  return U;
}

Mat companion(const std::vector<Fe>& cp, const Ctx& c) {
  int n = (int)cp.size() - 1;
  Mat C(n, n, c);
  for (int i = 0; i + 1 < n; ++i) C.at(i + 1, i) = Fe::integer(c, 1);
  // X^n + c1 X^{n-1} + ... + cn = 0 => X^n = -c1 X^{n-1} - ... - cn
  for (int i = 0; i < n; ++i) C.at(i, n - 1) = -cp[(size_t)(n - i)];
  return C;
}

}  // namespace

NormalFormUnitary transport_to_unitary(const NormalFormSymmetric& gamma) {
  const Ctx& c = gamma.core.ctx();
  if (which_space(gamma) != Space::V0)
    throw MatchConstructionFailed("element matches the non-split space");
  Mat H = moment_gram(gamma.core);
  Mat U = split_isometry(H);
  Mat T = U.inverse();
  Mat C = companion(gamma.core.charpoly(), c);
  Mat core = T * C * T.inverse();
  NormalFormUnitary g;
  g.m = gamma.m;
  g.r = gamma.r;
  g.t = gamma.t;
  g.core = core;
  // sanity: unitary w.r.t. the split Gram, and invariants transported
  if (!(core.transpose() * core.conj()).is_identity())
    throw MatchConstructionFailed("transported core is not unitary");
  if (!matches(g, gamma)) throw MatchConstructionFailed("transported invariants disagree");
  return g;
}

NormalFormSymmetric random_symmetric(const Ctx& c, int m, int r, int max_val, uint64_t seed) {
  SplitMix64 rng(seed);
  long long p = c->p;
  for (int attempt = 0; attempt < 200; ++attempt) {
    // gamma-core = conj(h) h^{-1} lies in S_{m+1}; control valuations via h
    Mat h(m + 1, m + 1, c);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) {
        long long a = rng.range(0, p * p * p - 1);
        long long b = rng.range(0, p * p * p - 1);
        long long v = rng.range(0, max_val);
        h.at(i, j) = Fe::from_parts(c, v, a, b);
      }
    NormalForm nf;
    nf.m = m;
    nf.r = r;
    try {
      Fe dh = h.det();
      if (!dh.is_unit_kind()) continue;
      Mat core = h.conj() * h.inverse();
      if (!in_symmetric_space(core)) continue;
      bool val_ok = true;
      for (int i = 0; i <= m && val_ok; ++i)
        for (int j = 0; j <= m && val_ok; ++j) {
          const Fe& e = core.at(i, j);
          if (e.is_unit_kind() && e.valuation() < -max_val) val_ok = false;
        }
      if (!val_ok) continue;
      for (int i = 0; i < r; ++i) {
        long long v = rng.range(-max_val, 0);
        long long a = rng.range(1, p - 1);
        long long b = rng.range(0, p - 1);
        nf.t.push_back(Fe::from_parts(c, v, a, b));
      }
      nf.core = core;
      if (!is_regular_core(core)) continue;
      return nf;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("random_symmetric: no regular instance found");
}

}  // namespace orbital::orbit
