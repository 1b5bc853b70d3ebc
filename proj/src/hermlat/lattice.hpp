#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/matrix.hpp"

namespace orbital::herm {

using padic::Ctx;
using padic::Fe;
using padic::Mat;

// Full-rank O_F-lattice in F^n, stored in canonical column Hermite form:
// the basis matrix is upper triangular, the pivot of column j sits at (j, j)
// and equals p^{k_j}, and every entry above a pivot row is reduced modulo
// p^{k_row}. Two lattices are equal as sets iff their canonical forms agree.
class Lattice {
 public:
  Lattice() = default;

  static Lattice standard(const Ctx& c, int n);
  // column-span of the given vectors (each of length n); throws RankDeficient
  // if they do not span a full-rank module
  static Lattice from_generators(const Ctx& c, int n, const std::vector<std::vector<Fe>>& gens);
  static Lattice from_cols(const Mat& m);  // columns as generators

  int dim() const { return n_; }
  const Ctx& ctx() const { return ctx_; }
  const Mat& basis() const { return basis_; }
  long long pivot_val(int i) const { return piv_[(size_t)i]; }
  // valuation of det(basis) = index against the standard lattice
  long long index_val() const;

  bool contains(const std::vector<Fe>& v) const;
  bool contains(const Lattice& other) const;
  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }

  Lattice scaled(long long ppower) const;          // p^k * Lambda
  Lattice sum(const Lattice& other) const;         // Lambda + M
  Lattice intersect(const Lattice& other) const;   // Lambda ∩ M
  Lattice apply(const Mat& g) const;               // g * Lambda
  Lattice conjugated() const;                      // entrywise Galois conjugate

  // dual w.r.t. the standard bilinear pairing x.y (no Hermitian form)
  Lattice std_dual() const;

  // Lambda ∩ span(e_1..e_i): the first i columns, as an i-dim lattice in the
  // first i coordinates (canonical triangular form makes this a prefix read)
  Lattice prefix_sublattice(int i) const;
  // image of Lambda ∩ span(e_1..e_b) in coordinates [a, b) (the graded piece
  // of the coordinate filtration)
  Lattice graded_band(int a, int b) const;
  // Lambda ∩ span(e_{idx} : idx in S) as an |S|-dim lattice in S-coordinates
  Lattice intersect_coords(const std::vector<int>& S) const;
  // Lambda ∩ column-span(B_S) expressed in the B_S-coordinates (s-dim)
  Lattice intersect_subspace(const Mat& B_S) const;

  std::string key() const;  // canonical digest, usable as a hash key

 private:
  Ctx ctx_;
  int n_ = 0;
  Mat basis_;
  std::vector<long long> piv_;

  void canonicalize(std::vector<std::vector<Fe>> cols);
};

// Hermitian ambient space: dimension + Gram matrix.
struct HermSpace {
  Ctx ctx;
  int n = 0;
  Mat gram;

  Fe pair(const std::vector<Fe>& x, const std::vector<Fe>& y) const {
    return padic::herm_pair(gram, x, y);
  }
};

// dual lattice {x : (x, Lambda) ⊆ O_F}
Lattice dual_lattice(const HermSpace& V, const Lattice& L);
// is the Hermitian form integral on L?
bool is_integral(const HermSpace& V, const Lattice& L);
// vertex condition L ⊆ L^dual ⊆ p^{-1} L
bool is_vertex(const HermSpace& V, const Lattice& L);
// t(L) = dim_{F_{p^2}} L^dual / L; throws NotAVertexLattice
int vertex_type(const HermSpace& V, const Lattice& L);
bool is_self_dual(const HermSpace& V, const Lattice& L);

}  // namespace orbital::herm
