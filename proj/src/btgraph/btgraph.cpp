#include "btgraph/btgraph.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "padic/solve.hpp"

namespace orbital::bt {

using padic::Mat;

int BTGraph::find(const Lattice& L) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == L) return (int)i;
  return -1;
}

std::vector<Lattice> enumerate_vertex_lattices(const HermSpace& V, const Lattice& ref,
                                               long long a, long long b, long long cap) {
  Lattice low = ref.scaled(a), high = ref.scaled(-b);
  auto in_window = [&](const Lattice& L) { return L.contains(low) && high.contains(L); };

  if (V.n == 3 && herm::is_vertex(V, ref)) {
    // Neighbor walk. The building is a tree whose edges are the containment
    // pairs type-3 ⊂ type-1; geodesics run through meets and joins, so they
    // stay inside any containment window around the base point. A BFS over
    // in-window nodes therefore reaches the whole window.
    std::map<std::string, Lattice> found;
    std::vector<Lattice> frontier{ref};
    if (in_window(ref)) found.emplace(ref.key(), ref);
    long long guard = 0;
    while (!frontier.empty()) {
      if (++guard > cap) throw WindowTooLarge("vertex walk exceeded cap");
      std::vector<Lattice> next;
      for (const Lattice& L : frontier) {
        int t = herm::vertex_type(V, L);
        Lattice D = herm::dual_lattice(V, L);
        std::vector<std::pair<Lattice, Lattice>> steps;  // (lowpart, socle source)
        if (t > 1) steps.push_back({L, D});               // go up: L + O x, x in Ldual
        if (t < V.n) steps.push_back({D.scaled(1), L});   // go down: p Ldual + O x, x in L
        for (auto& [lo, srcD] : steps) {
          herm::socle_candidates(V, lo, srcD, [&](const std::vector<Fe>& x) {
            std::vector<std::vector<Fe>> gens;
            for (int j = 0; j < V.n; ++j) gens.push_back(lo.basis().col(j));
            gens.push_back(x);
            Lattice cand = Lattice::from_generators(V.ctx, V.n, gens);
            if (!herm::is_vertex(V, cand)) return;
            if (!in_window(cand)) return;
            auto [it, fresh] = found.emplace(cand.key(), cand);
            if (fresh) next.push_back(cand);
          });
        }
      }
      frontier = std::move(next);
    }
    std::vector<Lattice> out;
    for (auto& [k, L] : found) out.push_back(L);
    return out;
  }

  // generic window scan
  std::vector<Lattice> out;
  auto prune = [&](int j, const std::vector<std::vector<Fe>>& cols) {
    for (int i = 0; i <= j; ++i) {
      try {
        if (!V.pair(cols[(size_t)j], cols[(size_t)i]).is_zero_mod(0)) return true;
      } catch (const PrecisionExhausted&) {
        return false;
      }
    }
    return false;
  };
  herm::enumerate_between(
      low, high,
      [&](const Lattice& L) {
        if (herm::is_vertex(V, L)) out.push_back(L);
      },
      prune, cap);
  return out;
}

BTGraph build_graph(const HermSpace& V, const Lattice& ref, long long a, long long b) {
  BTGraph G;
  G.window_a = a;
  G.window_b = b;
  G.nodes = enumerate_vertex_lattices(V, ref, a, b);
  for (auto& L : G.nodes) G.type.push_back(herm::vertex_type(V, L));
  // In the non-split odd space the type determines the index, so the sum of
  // two distinct nodes of minimal type can never be a vertex lattice and
  // mixed pairs qualify only through containment. This prunes the quadratic
  // scan to the pairs that can actually produce edges.
  int tmin = V.n + 1;
  for (int t : G.type) tmin = std::min(tmin, t);
  for (size_t i = 0; i < G.nodes.size(); ++i)
    for (size_t j = i + 1; j < G.nodes.size(); ++j) {
      bool edge = false;
      if (G.type[i] == tmin && G.type[j] == tmin) continue;
      if (G.type[i] != G.type[j]) {
        const size_t big = G.type[i] < G.type[j] ? i : j;
        const size_t small = big == i ? j : i;
        edge = G.nodes[big].contains(G.nodes[small]);
        if (!edge && V.n != 3) edge = herm::is_vertex(V, G.nodes[i].sum(G.nodes[j]));
      } else {
        edge = herm::is_vertex(V, G.nodes[i].sum(G.nodes[j]));
      }
      if (edge) G.edges.push_back({(int)i, (int)j});
    }
  return G;
}

std::vector<int> kr_support_nodes(const HermSpace& V, const BTGraph& G,
                                  const std::vector<std::vector<Fe>>& Egens, bool dagger) {
  const Ctx& c = V.ctx;
  std::vector<int> out;
  if (Egens.empty()) {
    for (size_t i = 0; i < G.nodes.size(); ++i) out.push_back((int)i);
    return out;
  }
  int n = V.n;
  int s = (int)Egens.size();
  Mat BE(n, s, c);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < n; ++i) BE.at(i, j) = Egens[(size_t)j][(size_t)i];
  // the E-lattice in its own span coordinates is the standard one
  Lattice Estd = Lattice::standard(c, s);
  for (size_t k = 0; k < G.nodes.size(); ++k) {
    const Lattice& L = G.nodes[k];
    bool contains_all = true;
    for (auto& g : Egens)
      if (!L.contains(g)) contains_all = false;
    if (!contains_all) continue;
    if (dagger) {
      Lattice cut = L.intersect_subspace(BE);
      if (!(cut == Estd)) continue;
    }
    out.push_back((int)k);
  }
  return out;
}

FlatImage flat_map(const HermSpace& V, const std::vector<Fe>& u, const Lattice& L) {
  const Ctx& c = V.ctx;
  int n = V.n;
  // saturation check: u in L, u/p not in L
  std::vector<Fe> up = u;
  for (auto& e : up) e = e.mul_ppow(-1);
  if (!L.contains(u) || L.contains(up))
    throw NotInVertDagger("flat_map requires E = span(E) ∩ Λ with E = <u>");
  // basis of u^perp starting with u
  std::vector<std::vector<Fe>> kernel;
  kernel.push_back(u);
  // pairing functional x -> (x, u): kernel via row reduction of the row
  // vector J conj(u)
  std::vector<Fe> row((size_t)n, Fe::zero(c));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (V.gram.at(j, i).is_exact_zero() || u[(size_t)i].is_exact_zero()) continue;
      row[(size_t)j] = row[(size_t)j] + V.gram.at(j, i) * u[(size_t)i].conj();
    }
  int pivot = -1;
  long long bv = Fe::kInfVal;
  for (int j = 0; j < n; ++j)
    if (row[(size_t)j].is_unit_kind() && row[(size_t)j].valuation() < bv) {
      bv = row[(size_t)j].valuation();
      pivot = j;
    }
  if (pivot < 0) throw Error("flat_map: degenerate pairing");
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    std::vector<Fe> v((size_t)n, Fe::zero(c));
    v[(size_t)j] = Fe::integer(c, 1);
    v[(size_t)pivot] = -(row[(size_t)j] * row[(size_t)pivot].inv());
    kernel.push_back(std::move(v));
  }
  // u^perp = <u> + <v_j : j != pivot>; u = sum u_j v_j, so dropping one v_j
  // with u_j nonzero leaves a basis [u, v_...] of u^perp
  int jex = -1;
  for (int j = 0; j < n; ++j)
    if (j != pivot && u[(size_t)j].is_unit_kind()) jex = j;
  if (jex < 0) throw Error("flat_map: isotropic vector supported on the pivot only");
  Mat BE(n, n - 1, c);
  {
    std::vector<std::vector<Fe>> cols;
    cols.push_back(u);
    for (size_t i = 1; i < kernel.size(); ++i) {
      // kernel[i] corresponds to coordinate j with leading entry e_j
      int lead = -1;
      for (int t = 0; t < n; ++t)
        if (t != pivot && kernel[i][(size_t)t].is_unit_kind() &&
            kernel[i][(size_t)t].eq(Fe::integer(c, 1))) {
          lead = t;
          break;
        }
      if (lead == jex) continue;
      cols.push_back(kernel[i]);
    }
    if ((int)cols.size() != n - 1) throw Error("flat_map: failed to span u^perp");
    for (size_t j = 0; j < cols.size(); ++j)
      for (int t = 0; t < n; ++t) BE.at(t, (int)j) = cols[j][(size_t)t];
  }
  Lattice cut = L.intersect_subspace(BE);  // (n-1)-dim, coordinates in BE
  // quotient by <u> (the first BE-coordinate): drop it
  std::vector<std::vector<Fe>> gens;
  for (int j = 0; j < n - 1; ++j) {
    std::vector<Fe> v;
    for (int i = 1; i < n - 1; ++i) v.push_back(cut.basis().at(i, j));
    gens.push_back(std::move(v));
  }
  FlatImage out;
  Mat Jq(n - 2, n - 2, c);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j) {
      std::vector<Fe> bi = BE.col(i), bj = BE.col(j);
      Jq.at(i - 1, j - 1) = V.pair(bi, bj);
    }
  out.space = HermSpace{c, n - 2, Jq};
  out.lattice = Lattice::from_generators(c, n - 2, gens);
  out.type = herm::vertex_type(out.space, out.lattice);
  return out;
}

Components components_z_dagger(const HermSpace& V, const Lattice& ref,
                               const std::vector<Fe>& u, long long a, long long b) {
  Components out;
  out.graph = build_graph(V, ref, a, b);
  const BTGraph& G = out.graph;
  std::vector<Fe> up = u;
  for (auto& e : up) e = e.mul_ppow(-1);
  std::vector<int> idx;  // dagger nodes
  std::vector<int> pos((size_t)G.nodes.size(), -1);
  for (size_t i = 0; i < G.nodes.size(); ++i) {
    if (G.nodes[i].contains(u) && !G.nodes[i].contains(up)) {
      pos[i] = (int)idx.size();
      idx.push_back((int)i);
    }
  }
  out.dagger_nodes = idx;
  // union-find over dagger nodes; edge iff the sum is a vertex lattice that
  // still saturates u (the removed intersection points are exactly the sums
  // containing u/p)
  std::vector<int> parent(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> findp = [&](int x) {
    while (parent[(size_t)x] != x) x = parent[(size_t)x] = parent[(size_t)parent[(size_t)x]];
    return x;
  };
  for (size_t ii = 0; ii < idx.size(); ++ii)
    for (size_t jj = ii + 1; jj < idx.size(); ++jj) {
      Lattice s = G.nodes[(size_t)idx[ii]].sum(G.nodes[(size_t)idx[jj]]);
      if (!herm::is_vertex(V, s)) continue;
      if (s.contains(up)) continue;  // intersection point removed in the dagger locus
      int a1 = findp((int)ii), b1 = findp((int)jj);
      if (a1 != b1) parent[(size_t)a1] = b1;
    }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < idx.size(); ++i) groups[findp((int)i)].push_back(idx[i]);
  for (auto& [root, members] : groups) out.components.push_back(members);
  return out;
}

Lattice reference_vertex(const HermSpace& V) { return Lattice::standard(V.ctx, V.n); }

std::vector<Fe> isotropic_vector(const HermSpace& V) {
  const Ctx& c = V.ctx;
  // Gram diag(1, ..., 1, p): u = (z, 1, 0, ..., 0) with Nm(z) = -1
  Fe z = padic::norm_solve(c, Fe::integer(c, -1));
  std::vector<Fe> u((size_t)V.n, Fe::zero(c));
  u[0] = z;
  u[1] = Fe::integer(c, 1);
  Fe norm = V.pair(u, u);
  if (!norm.eq(Fe::zero(c))) throw Error("isotropic_vector: construction failed");
  return u;
}

std::string graph_dot(const BTGraph& G) {
  std::ostringstream os;
  os << "graph bt {\n";
  for (size_t i = 0; i < G.nodes.size(); ++i)
    os << "  n" << i << " [label=\"t=" << G.type[i] << "\"];\n";
  for (auto& [i, j] : G.edges) os << "  n" << i << " -- n" << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace orbital::bt
