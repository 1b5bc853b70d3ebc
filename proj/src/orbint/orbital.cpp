#include "orbint/orbital.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <set>

namespace orbital::integrals {

using herm::FlagData;
using padic::Fe;
using padic::Mat;

namespace {

long long min_entry_val(const std::vector<Fe>& v) {
  long long m = 0;
  for (const Fe& e : v)
    if (e.is_unit_kind()) m = std::min(m, e.valuation());
  return m;
}

}  // namespace

Lattice bound_lattice(const BesselFrame& F, const NormalFormUnitary& g) {
  if (!orbit::is_regular(g)) throw NotRegular("bound_lattice requires a regular element");
  const padic::Ctx& c = F.space.ctx;
  int n = F.n(), r = F.r, m = F.m;
  // N = max(0, -min val t_i)
  long long N = 0;
  for (const Fe& t : g.t) N = std::max(N, -t.valuation());
  // M from the valuations of the Krylov vectors of the special line
  Mat core = g.core;
  Mat pw = Mat::identity(m + 1, c);
  long long M = N;
  std::vector<std::vector<Fe>> krylov;
  for (int k = 0; k <= m; ++k) {
    std::vector<Fe> col = pw.col(0);  // (core^k) e in W^sharp coordinates
    M = std::max(M, N - min_entry_val(col));
    krylov.push_back(col);
    pw = core * pw;
  }
  std::vector<std::vector<Fe>> gens;
  for (auto& wv : krylov) {
    std::vector<Fe> v((size_t)n, Fe::zero(c));
    for (int i = 0; i <= m; ++i) v[(size_t)(r + i)] = wv[(size_t)i].mul_ppow(M);
    gens.push_back(std::move(v));
  }
  Mat G = g.embed(c);
  for (int i = 0; i < r; ++i) {
    std::vector<Fe> e((size_t)n, Fe::zero(c));
    e[(size_t)i] = Fe::from_parts(c, N, 1, 0);
    gens.push_back(e);
    std::vector<Fe> ge((size_t)n, Fe::zero(c));
    ge[(size_t)(n - 1 - i)] = g.t[(size_t)i].conj().inv().mul_ppow(N);
    gens.push_back(ge);
  }
  // full rank: the Krylov vectors span W^sharp by regularity, the flag
  // vectors and their g-images span E + E^dual
  return Lattice::from_generators(c, n, gens);
}

namespace {

// the framed-flag pivots can only decrease as the lattice grows; once one of
// the first r+1 pivots goes negative (for Lambda' or for g^{-1} Lambda') no
// over-lattice can satisfy the framed condition
bool flag_prune(const BesselFrame& F, const Mat& ginv, const Lattice& M) {
  for (int i = 0; i <= F.r; ++i)
    if (M.pivot_val(i) < 0) return true;
  Lattice Mi = M.apply(ginv);
  for (int i = 0; i <= F.r; ++i)
    if (Mi.pivot_val(i) < 0) return true;
  return false;
}

// r = 0 contributors are exactly the g-stable self-dual lattices containing
// the special vector primitively (the flat-part condition forces the pair to
// coincide). Enumerate g-orbit closures only: the state space collapses.
Cyc sum_gstable(const BesselFrame& F, const PsiChar& psi, const Mat& G, const Mat& Ginv,
                const Lattice& low0, const OrbOptions& opt, long long* contributing,
                long long* candidates) {
  const padic::FieldConfig* c = F.space.ctx.get();
  int n = F.n();
  auto closure = [&](Lattice M, const Lattice& top) -> std::optional<Lattice> {
    for (int it = 0; it < 64; ++it) {
      if (!top.contains(M)) return std::nullopt;
      Lattice M2 = M.sum(M.apply(G)).sum(M.apply(Ginv));
      if (M2 == M) return M;
      M = M2;
    }
    return std::nullopt;
  };
  // close the bound lattice; empty support when the closure escapes. The
  // window cap applies to the closed window: state count scales with the
  // number of stable lattices, not with the raw window size.
  Lattice top0 = herm::dual_lattice(F.space, low0);
  auto low_opt = closure(low0, top0);
  if (!low_opt) return Cyc::zero(c->p);
  Lattice low = *low_opt;
  Lattice top = herm::dual_lattice(F.space, low);
  if (!top.contains(low)) return Cyc::zero(c->p);
  long long wexp = low.index_val() - top.index_val();
  if (wexp > 2 * opt.cap_exponent) throw WindowTooLarge("unitary window exceeds cap");
  long long target_index = (low.index_val() + top.index_val());
  if (target_index % 2 != 0) return Cyc::zero(c->p);
  target_index /= 2;
  std::map<std::string, Lattice> layer;
  std::set<std::string> done;
  layer.emplace(low.key(), low);
  Cyc total = Cyc::zero(c->p);
  while (!layer.empty()) {
    std::map<std::string, Lattice> next;
    for (auto& [key, M] : layer) {
      if (!done.insert(key).second) continue;
      if (candidates) ++*candidates;
      if (M.index_val() == target_index && herm::is_self_dual(F.space, M)) {
        auto fd = herm::flag_data(F, M);
        if (fd) {
          total += Cyc::one(c->p);  // psi(M) conj(psi(M)) = 1
          if (contributing) ++*contributing;
        }
        continue;  // self-dual states admit no isotropic extension
      }
      Lattice D = herm::dual_lattice(F.space, M).intersect(top).intersect(M.scaled(-1));
      if (D.index_val() == M.index_val()) continue;
      socle_candidates(F.space, M, D, [&](const std::vector<Fe>& x) {
        std::vector<std::vector<Fe>> gens;
        for (int j = 0; j < n; ++j) gens.push_back(M.basis().col(j));
        gens.push_back(x);
        Lattice Mx = Lattice::from_generators(F.space.ctx, n, gens);
        auto cl = closure(Mx, top);
        if (!cl) return;
        if (!herm::is_integral(F.space, *cl)) return;
        if (cl->pivot_val(0) < 0) return;  // special line must stay framed
        next.emplace(cl->key(), *cl);
      });
    }
    layer = std::move(next);
  }
  return total;
}

Cyc sum_over_window(const BesselFrame& F, const PsiChar& psi, const Mat& Ginv,
                    const Lattice& low, const OrbOptions& opt, long long* contributing,
                    long long* candidates) {
  const padic::Ctx& c = F.space.ctx;
  auto prune = [&](const Lattice& M) { return flag_prune(F, Ginv, M); };
  std::vector<Lattice> sds =
      herm::enumerate_self_dual(F.space, low, opt.cap_exponent, prune, opt.workers);
  if (candidates) *candidates += (long long)sds.size();
  Cyc total = Cyc::zero(c->p);
  for (const Lattice& Lp : sds) {
    auto fdp = herm::flag_data(F, Lp);
    if (!fdp) continue;
    Lattice L = Lp.apply(Ginv);
    if (!herm::is_self_dual(F.space, L)) continue;  // holds for unitary g; cheap guard
    auto fd = herm::flag_data(F, L);
    if (!fd) continue;
    if (!(fd->flat == fdp->flat)) continue;
    Cyc w = psi(herm::lambda_of_flag(F, fd->flag_coset)) *
            psi(herm::lambda_of_flag(F, fdp->flag_coset)).conj();
    total += w;
    if (contributing) ++*contributing;
  }
  return total;
}

}  // namespace

// r = 1 flag-structured path. Every lattice in the framed set is
// n(b, c) L0(Mflat) for the Bessel unipotent n(b, c) (last column (c, b, 1),
// first row (1, -conj(b)^T J_B, c), tr(c) = -(b,b)) and a self-dual flat part
// Mflat in W. Pair integrality bounds the coset residues by the corner
// valuations exactly as on the symmetric side; saturation enlarges the
// residue space digit by digit.
namespace {

struct FlagPathCounters {
  long long candidates = 0;
  long long contributing = 0;
};

Cyc sum_flagpath_r1(const BesselFrame& F, const PsiChar& psi, const Mat& G, const Mat& Ginv,
                    const NormalFormUnitary& g, int margin_budget, FlagPathCounters* counters) {
  const padic::Ctx& ctx = F.space.ctx;
  const padic::FieldConfig* c = ctx.get();
  int m = F.m, n = F.n();
  long long vt = g.t[0].valuation();
  Cyc total = Cyc::zero(c->p);
  if (vt > 0) return total;  // corner blocks can never be integral
  long long B = -vt;
  // flat parts: self-dual lattices of W in the bound window
  herm::HermSpace Wsp = herm::split_space(ctx, m);
  Lattice low_flat = [&] {
    Lattice low = bound_lattice(F, g);
    auto lowflat = low.graded_band(F.r, F.r + 1 + m);
    // drop the special coordinate: intersect with W inside W^sharp
    std::vector<int> wc;
    for (int l = 1; l <= m; ++l) wc.push_back(l);
    Lattice cut = lowflat.intersect_coords(wc);
    return cut;
  }();
  std::vector<Lattice> flats;
  {
    Lattice lf = low_flat.scaled(margin_budget);
    Lattice top = herm::dual_lattice(Wsp, lf);
    if (top.contains(lf)) flats = herm::enumerate_self_dual(Wsp, lf, 30);
    if (flats.empty()) flats.push_back(Lattice::standard(ctx, m));
  }
  std::set<std::string> seen;
  Fe half = Fe::integer(ctx, 2).inv();
  Fe omega_el = Fe::omega(ctx);
  // residue digit budgets: (m+1) b-coordinates and the c-coordinate
  int ncoord = m + 2;
  std::vector<long long> extra((size_t)ncoord, 0);
  std::function<void(int, int)> over_margins = [&](int coord, int left) {
    if (coord == ncoord) {
      // enumerate candidates with these digit windows
      std::vector<long long> bdig((size_t)(m + 1));
      for (int i = 0; i <= m; ++i) bdig[(size_t)i] = B + extra[(size_t)i];
      long long cdig = 2 * B + extra[(size_t)(m + 1)];
      // iterate residues
      std::vector<Fe> b((size_t)(m + 1), Fe::zero(ctx));
      std::function<void(int)> rec = [&](int i) {
        if (i == m + 1) {
          // c = -(b,b)/2 + c_im w, c_im over F_0 residues
          Fe nb = Fe::zero(ctx);
          for (int t = 0; t <= m; ++t) nb = nb + b[(size_t)t].norm();
          long long cm = 1;
          for (long long t = 0; t < cdig; ++t) cm *= c->p;
          for (long long ci = 0; ci < cm; ++ci) {
            Fe cim = ci ? Fe::from_parts(ctx, -cdig, ci, 0) : Fe::zero(ctx);
            Fe cc = -(nb * half) + cim * omega_el;
            for (const Lattice& Mb : flats) {
              if (counters) ++counters->candidates;
              // assemble Lambda' = n(b, c) * L0(Mb)
              Mat cols(n, n, ctx);
              // e-flag column
              cols.at(0, 0) = Fe::integer(ctx, 1);
              // v column
              cols.at(1, 1) = Fe::integer(ctx, 1);
              cols.at(0, 1) = -(b[0].conj());
              // W columns: Mb-basis with first-row corrections
              for (int j = 0; j < m; ++j) {
                Fe arow = Fe::zero(ctx);
                for (int i = 0; i < m; ++i) {
                  cols.at(2 + i, 2 + j) = Mb.basis().at(i, j);
                  arow = arow + (-(b[(size_t)(1 + i)].conj())) * Mb.basis().at(i, j);
                }
                cols.at(0, 2 + j) = arow;
              }
              // dual column (c, b, 1)
              cols.at(0, n - 1) = cc;
              for (int i = 0; i <= m; ++i) cols.at(1 + i, n - 1) = b[(size_t)i];
              cols.at(n - 1, n - 1) = Fe::integer(ctx, 1);
              Lattice Lp = Lattice::from_cols(cols);
              if (!seen.insert(Lp.key()).second) continue;
              auto fdp = herm::flag_data(F, Lp);
              if (!fdp) continue;
              Lattice L = Lp.apply(Ginv);
              auto fd = herm::flag_data(F, L);
              if (!fd) continue;
              if (!(fd->flat == fdp->flat)) continue;
              Cyc w = psi(herm::lambda_of_flag(F, fd->flag_coset)) *
                      psi(herm::lambda_of_flag(F, fdp->flag_coset)).conj();
              total += w;
              if (counters) ++counters->contributing;
            }
          }
          return;
        }
        long long digits = bdig[(size_t)i];
        long long md = 1;
        for (long long t = 0; t < digits; ++t) md *= c->p;
        for (long long da = 0; da < md; ++da)
          for (long long db = 0; db < md; ++db) {
            b[(size_t)i] = (da || db) ? Fe::from_parts(ctx, -digits, da, db) : Fe::zero(ctx);
            rec(i + 1);
          }
      };
      rec(0);
      return;
    }
    for (int use = 0; use <= left; ++use) {
      extra[(size_t)coord] = use;
      over_margins(coord + 1, left - use);
    }
    extra[(size_t)coord] = 0;
  };
  over_margins(0, margin_budget);
  (void)G;
  return total;
}

}  // namespace

UnitaryOrbital orb_unitary(const BesselFrame& F, const PsiChar& psi, const NormalFormUnitary& g,
                           const OrbOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  if (!orbit::is_regular(g)) throw NotRegular("orb_unitary requires a regular element");
  const padic::Ctx& c = F.space.ctx;
  Mat G = g.embed(c);
  Mat Ginv = G.inverse();
  // Lambda' contains Lambda(g), and Lambda = g^{-1} Lambda' contains
  // Lambda(g^{-1}); push the second bound through g
  NormalFormUnitary gi;
  gi.m = g.m;
  gi.r = g.r;
  for (const Fe& t : g.t) gi.t.push_back(t.conj());
  gi.core = g.core.inverse();
  Lattice low = bound_lattice(F, g).sum(bound_lattice(F, gi).apply(G));
  UnitaryOrbital out;
  out.value = Cyc::zero(c->p);
  Lattice top = herm::dual_lattice(F.space, low);
  if (!top.contains(low)) {
    // no integral lattice can contain low: empty support
    out.support.saturated = true;
    out.support.window_exponent = 0;
    auto t1 = std::chrono::steady_clock::now();
    out.support.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
  }
  long long contributing = 0, candidates = 0;
  Cyc base = Cyc::zero(c->p);
  bool saturated = true;
  if (F.r == 1) {
    FlagPathCounters k0;
    base = sum_flagpath_r1(F, psi, G, Ginv, g, 0, &k0);
    contributing = k0.contributing;
    candidates = k0.candidates;
    for (int grow = 1; grow <= opt.saturation_checks; ++grow) {
      FlagPathCounters kg;
      Cyc again = sum_flagpath_r1(F, psi, G, Ginv, g, grow, &kg);
      candidates += kg.candidates;
      if (!(again == base)) {
        saturated = false;
        break;
      }
    }
  } else {
    auto run = [&](const Lattice& lo, long long* contrib, long long* cand) {
      if (F.r == 0) return sum_gstable(F, psi, G, Ginv, lo, opt, contrib, cand);
      return sum_over_window(F, psi, Ginv, lo, opt, contrib, cand);
    };
    base = run(low, &contributing, &candidates);
    for (int grow = 1; grow <= opt.saturation_checks; ++grow) {
      Cyc again = run(low.scaled(grow), nullptr, &candidates);
      if (!(again == base)) {
        saturated = false;
        break;
      }
    }
  }
  if (!saturated)
    throw SaturationFailed("unitary orbital sum changed under window growth");
  out.value = base;
  out.support.window_exponent = herm::window_exponent(F.space, low) + 2LL * F.n() * opt.saturation_checks;
  out.support.contributing = contributing;
  out.support.candidates = candidates;
  out.support.saturated = saturated;
  auto t1 = std::chrono::steady_clock::now();
  out.support.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

Cyc orb_unitary_bruteforce(const BesselFrame& F, const PsiChar& psi, const NormalFormUnitary& g,
                           int extra_window) {
  const padic::Ctx& c = F.space.ctx;
  Mat G = g.embed(c);
  Mat Ginv = G.inverse();
  NormalFormUnitary gi;
  gi.m = g.m;
  gi.r = g.r;
  for (const Fe& t : g.t) gi.t.push_back(t.conj());
  gi.core = g.core.inverse();
  Lattice low = bound_lattice(F, g).sum(bound_lattice(F, gi).apply(G)).scaled(extra_window);
  Cyc total = Cyc::zero(c->p);
  Lattice top = herm::dual_lattice(F.space, low);
  if (!top.contains(low)) return total;
  for (const Lattice& Lp : herm::self_dual_bruteforce(F.space, low)) {
    auto fdp = herm::flag_data(F, Lp);
    if (!fdp) continue;
    Lattice L = Lp.apply(Ginv);
    if (!herm::is_self_dual(F.space, L)) continue;
    auto fd = herm::flag_data(F, L);
    if (!fd) continue;
    if (!(fd->flat == fdp->flat)) continue;
    total += psi(herm::lambda_of_flag(F, fd->flag_coset)) *
             psi(herm::lambda_of_flag(F, fdp->flag_coset)).conj();
  }
  return total;
}

}  // namespace orbital::integrals
