#pragma once

#include <functional>
#include <vector>

#include "hermlat/frame.hpp"

namespace orbital::herm {

// |low^dual / low| = p^{2 * window_exponent}
long long window_exponent(const HermSpace& V, const Lattice& low);

// All self-dual lattices M with low ⊆ M ⊆ low^dual, each exactly once,
// in a deterministic order (sorted by canonical key). Enumerates by
// p-elementary isotropic extensions layer by layer with early pruning.
//
// `prune` (optional) may reject a partial integral lattice when no framed
// over-lattice of it can satisfy the caller's conditions; it must be monotone
// (reject M => reject every M' ⊇ M).
// `cap_exponent`: throw WindowTooLarge when window_exponent exceeds it.
std::vector<Lattice> enumerate_self_dual(
    const HermSpace& V, const Lattice& low, long long cap_exponent = 20,
    const std::function<bool(const Lattice&)>& prune = nullptr, int workers = 1);

// Independent oracle: every lattice M with low ⊆ M ⊆ high, enumerated as
// canonical triangular matrices in high-coordinates with containment pruning.
// `col_prune(j, cols-so-far-in-V-coords)` may reject a partial choice.
void enumerate_between(
    const Lattice& low, const Lattice& high,
    const std::function<void(const Lattice&)>& emit,
    const std::function<bool(int, const std::vector<std::vector<padic::Fe>>&)>& col_prune =
        nullptr,
    long long cap_candidates = 200000000, bool base_field_only = false);

// spec-shaped entry point: when flags_required, branches that already break
// the framed-flag condition of the given frame are pruned
std::vector<Lattice> enumerate_self_dual(const BesselFrame& F, const Lattice& low,
                                         bool flags_required, long long cap_exponent = 20);

// brute-force reference for enumerate_self_dual (small windows only)
std::vector<Lattice> self_dual_bruteforce(const HermSpace& V, const Lattice& low);

// visits the nonzero projective socle combinations x of D/M (p x in M is the
// caller's responsibility via the choice of D) that (a) are not already in M
// and (b) have integral norm
void socle_candidates(const HermSpace& V, const Lattice& M, const Lattice& D,
                      const std::function<void(const std::vector<padic::Fe>&)>& visit);

}  // namespace orbital::herm
