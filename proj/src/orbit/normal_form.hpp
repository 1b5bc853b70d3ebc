#pragma once

#include <optional>
#include <vector>

#include "hermlat/frame.hpp"

namespace orbital::orbit {

using herm::BesselFrame;
using padic::Ctx;
using padic::Fe;
using padic::Mat;

// Antidiagonal normal form shared by both sides: corner invariants t_1..t_r
// and an (m+1)x(m+1) core block acting on W^sharp = <v, w_1..w_m>. The
// embedded matrix sends basis(i) -> conj(t_{i+1})^{-1} basis(n-1-i) and
// basis(n-1-i) -> t_{i+1} basis(i) for i < r.
struct NormalForm {
  int m = 1, r = 0;
  std::vector<Fe> t;  // r corner invariants, all nonzero
  Mat core;           // unitary: in U(W^sharp); symmetric: in S_{m+1}

  int n() const { return m + 1 + 2 * r; }
  Mat embed(const Ctx& c) const;
};

using NormalFormUnitary = NormalForm;
using NormalFormSymmetric = NormalForm;

// membership checks for the ambient groups
bool in_unitary_group(const BesselFrame& F, const Mat& g);
bool in_symmetric_space(const Mat& g);  // g * conj(g) = 1

// Reduction to the antidiagonal normal form by unipotent moves (N x N on the
// unitary side, Res U_{1^r,m+1,1^r} twisted conjugation on the symmetric
// side). Throws NotPreRegular when a corner invariant vanishes.
NormalFormUnitary normalize_unitary(const BesselFrame& F, const Mat& g);
NormalFormSymmetric normalize_symmetric(int m, int r, const Mat& gamma);

bool is_pre_regular_unitary(const BesselFrame& F, const Mat& g);
bool is_pre_regular_symmetric(int m, int r, const Mat& gamma);

// conjugacy invariants of the core block under GL(W): characteristic
// polynomial plus the moments (core^k)_{00}, k = 0..2m
struct MatchInvariants {
  std::vector<Fe> charpoly;  // c0..c_{m+1}, c0 = 1
  std::vector<Fe> moments;   // 2m+1 values

  bool equals(const MatchInvariants& o) const;
};
MatchInvariants match_invariants(const Mat& core);

// regularity: the Krylov vectors of the special line span, detected by the
// (m+1)x(m+1) moment matrix (c_{i+j}) being nonsingular
bool is_regular_core(const Mat& core);
inline bool is_regular(const NormalForm& nf) { return is_regular_core(nf.core); }

bool matches(const NormalFormUnitary& g, const NormalFormSymmetric& gamma);

enum class Space { V0, V1 };  // split / non-split

// Gram matrix of the Krylov basis reconstructed from the moments of a
// symmetric core; its determinant class decides the matching space.
Mat moment_gram(const Mat& core);
Space which_space(const NormalFormSymmetric& gamma);

// construct the matched unitary normal form (split side); throws
// MatchConstructionFailed / NotRegular
NormalFormUnitary transport_to_unitary(const NormalFormSymmetric& gamma);

// random regular instances for sweeps and tests (deterministic in seed)
NormalFormSymmetric random_symmetric(const Ctx& c, int m, int r, int max_val, uint64_t seed);

}  // namespace orbital::orbit
