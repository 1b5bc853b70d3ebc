#include "hermlat/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace orbital::herm {

using padic::Fe;

long long window_exponent(const HermSpace& V, const Lattice& low) {
  Lattice d = dual_lattice(V, low);
  return low.index_val() - d.index_val();
}

namespace {

// digit-combination enumeration of socle representatives: coefficients
// a_i + b_i w in [0,p)^2 per basis vector, leading nonzero digit normalized
// to 1 (M + O x is invariant under unit scaling of x)
template <typename Fn>
void socle_reps(const Ctx& c, int n, Fn&& visit) {
  long long p = c->p;
  std::vector<std::pair<long long, long long>> digits((size_t)n, {0, 0});
  for (int lead = 0; lead < n; ++lead) {
    digits.assign((size_t)n, {0, 0});
    digits[(size_t)lead] = {1, 0};
    int tail = n - lead - 1;
    long long total = 1;
    for (int i = 0; i < 2 * tail; ++i) total *= p;
    for (long long mask = 0; mask < total; ++mask) {
      long long rem = mask;
      for (int i = 0; i < tail; ++i) {
        digits[(size_t)(lead + 1 + i)].first = rem % p;
        rem /= p;
        digits[(size_t)(lead + 1 + i)].second = rem % p;
        rem /= p;
      }
      visit(digits);
    }
  }
}

}  // namespace

void socle_candidates(const HermSpace& V, const Lattice& M, const Lattice& D,
                      const std::function<void(const std::vector<Fe>&)>& visit) {
  const Ctx& c = M.ctx();
  int n = M.dim();
  socle_reps(c, n, [&](const std::vector<std::pair<long long, long long>>& dig) {
    std::vector<Fe> x((size_t)n, Fe::zero(c));
    for (int i = 0; i < n; ++i) {
      if (dig[(size_t)i].first == 0 && dig[(size_t)i].second == 0) continue;
      Fe coef = Fe::from_parts(c, 0, dig[(size_t)i].first, dig[(size_t)i].second);
      for (int t = 0; t < n; ++t) x[(size_t)t] = x[(size_t)t] + coef * D.basis().at(t, i);
    }
    if (M.contains(x)) return;
    if (!V.pair(x, x).is_zero_mod(0)) return;
    visit(x);
  });
}

std::vector<Lattice> enumerate_self_dual(const HermSpace& V, const Lattice& low,
                                         long long cap_exponent,
                                         const std::function<bool(const Lattice&)>& prune,
                                         int workers) {
  const Ctx& c = low.ctx();
  int n = low.dim();
  Lattice top = dual_lattice(V, low);
  if (!top.contains(low)) return {};  // empty window
  long long wexp = low.index_val() - top.index_val();
  if (wexp > cap_exponent)
    throw WindowTooLarge("self-dual window exponent " + std::to_string(wexp) + " exceeds cap " +
                         std::to_string(cap_exponent));
  long long target_index = low.index_val() + top.index_val();
  if (target_index % 2 != 0) return {};
  target_index /= 2;

  std::vector<Lattice> results;
  std::set<std::string> result_keys;
  std::map<std::string, Lattice> layer;
  if (!prune || !prune(low)) layer.emplace(low.key(), low);

  auto expand_one = [&](const Lattice& M, std::map<std::string, Lattice>& next) {
    if (M.index_val() == target_index) return;  // self-dual level: no extensions
    // extensions by x with p x in M, x in dual(M) ∩ top, (x,x) integral
    Lattice D = dual_lattice(V, M).intersect(top).intersect(M.scaled(-1));
    if (D.index_val() == M.index_val()) return;
    socle_candidates(V, M, D, [&](const std::vector<Fe>& x) {
      std::vector<std::vector<Fe>> gens;
      for (int j = 0; j < n; ++j) gens.push_back(M.basis().col(j));
      gens.push_back(x);
      Lattice Mx = Lattice::from_generators(c, n, gens);
      if (prune && prune(Mx)) return;
      next.emplace(Mx.key(), Mx);
    });
  };

  while (!layer.empty()) {
    for (auto& [k, M] : layer) {
      if (M.index_val() == target_index && is_self_dual(V, M)) {
        if (result_keys.insert(k).second) results.push_back(M);
      }
    }
    std::map<std::string, Lattice> next;
    if (workers <= 1 || layer.size() < 4) {
      for (auto& [k, M] : layer) expand_one(M, next);
    } else {
      std::vector<const Lattice*> items;
      for (auto& [k, M] : layer) items.push_back(&M);
      std::mutex mu;
      int nt = std::min<int>(workers, (int)items.size());
      std::vector<std::thread> pool;
      std::atomic<size_t> cursor{0};
      for (int t = 0; t < nt; ++t)
        pool.emplace_back([&]() {
          std::map<std::string, Lattice> local;
          while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= items.size()) break;
            expand_one(*items[i], local);
          }
          std::lock_guard<std::mutex> lk(mu);
          for (auto& kv : local) next.emplace(kv.first, kv.second);
        });
      for (auto& th : pool) th.join();
    }
    layer = std::move(next);
  }
  std::sort(results.begin(), results.end(),
            [](const Lattice& a, const Lattice& b) { return a.key() < b.key(); });
  return results;
}

std::vector<Lattice> enumerate_self_dual(const BesselFrame& F, const Lattice& low,
                                         bool flags_required, long long cap_exponent) {
  if (!flags_required) return enumerate_self_dual(F.space, low, cap_exponent);
  auto prune = [&](const Lattice& M) {
    // pivots of the framed columns only decrease as the lattice grows; once
    // negative the framed condition is unreachable
    for (int i = 0; i <= F.r; ++i)
      if (M.pivot_val(i) < 0) return true;
    return false;
  };
  return enumerate_self_dual(F.space, low, cap_exponent, prune);
}

void enumerate_between(
    const Lattice& low, const Lattice& high, const std::function<void(const Lattice&)>& emit,
    const std::function<bool(int, const std::vector<std::vector<Fe>>&)>& col_prune,
    long long cap_candidates, bool base_field_only) {
  const Ctx& c = low.ctx();
  int n = low.dim();
  Mat H = high.basis();
  Mat Hinv = H.inverse();
  Lattice Lc = Lattice::from_cols(Hinv * low.basis());
  std::vector<long long> bound((size_t)n);
  for (int i = 0; i < n; ++i) {
    bound[(size_t)i] = Lc.pivot_val(i);
    if (bound[(size_t)i] < 0) throw Error("enumerate_between: low not inside high");
  }
  long long visited = 0;
  std::vector<std::vector<Fe>> cols((size_t)n);
  std::vector<std::vector<Fe>> vcols((size_t)n);
  std::vector<long long> kpiv((size_t)n, 0);

  // does column j of (low in high coords) reduce against chosen columns?
  auto low_col_ok = [&](int j) {
    std::vector<Fe> w = Lc.basis().col(j);
    for (int i = j; i >= 0; --i) {
      const Fe& e = w[(size_t)i];
      if (!e.is_zero_mod(kpiv[(size_t)i])) return false;
      if (e.is_exact_zero() || e.kind() == Fe::Kind::ZeroMod) continue;
      Fe q = e * Fe::from_parts(c, -kpiv[(size_t)i], 1, 0);
      for (int t = 0; t < i; ++t) w[(size_t)t] = w[(size_t)t] - q * cols[(size_t)i][(size_t)t];
    }
    return true;
  };

  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      emit(Lattice::from_generators(c, n, vcols));
      return;
    }
    long long p = c->p;
    for (long long k = 0; k <= bound[(size_t)j]; ++k) {
      std::vector<long long> mods((size_t)j, 1);
      long long total = 1;
      for (int i = 0; i < j; ++i) {
        long long m = 1;
        for (int t = 0; t < kpiv[(size_t)i]; ++t) m *= p;
        mods[(size_t)i] = m;
        long long cell = base_field_only ? m : m * m;
        if (total > cap_candidates / (cell + 1))
          throw WindowTooLarge("enumerate_between residue grid too large");
        total *= cell;
      }
      kpiv[(size_t)j] = k;
      for (long long mask = 0; mask < total; ++mask) {
        if (++visited > cap_candidates)
          throw WindowTooLarge("enumerate_between candidate cap exceeded");
        std::vector<Fe> col((size_t)n, Fe::zero(c));
        col[(size_t)j] = Fe::from_parts(c, k, 1, 0);
        long long rem = mask;
        for (int i = 0; i < j; ++i) {
          long long a = rem % mods[(size_t)i];
          rem /= mods[(size_t)i];
          long long b = 0;
          if (!base_field_only) {
            b = rem % mods[(size_t)i];
            rem /= mods[(size_t)i];
          }
          if (a || b) col[(size_t)i] = Fe::from_parts(c, 0, a, b);
        }
        cols[(size_t)j] = col;
        vcols[(size_t)j] = H.apply(col);
        if (!low_col_ok(j)) continue;
        if (col_prune && col_prune(j, vcols)) continue;
        rec(j + 1);
      }
    }
  };
  rec(0);
}

std::vector<Lattice> self_dual_bruteforce(const HermSpace& V, const Lattice& low) {
  Lattice top = dual_lattice(V, low);
  if (!top.contains(low)) return {};
  std::vector<Lattice> out;
  enumerate_between(low, top, [&](const Lattice& M) {
    if (is_self_dual(V, M)) out.push_back(M);
  });
  std::sort(out.begin(), out.end(),
            [](const Lattice& a, const Lattice& b) { return a.key() < b.key(); });
  return out;
}

}  // namespace orbital::herm
