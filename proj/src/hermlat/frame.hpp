#pragma once

#include <optional>

#include "hermlat/lattice.hpp"
#include "padic/cyclotomic.hpp"

namespace orbital::herm {

using padic::Cyc;
using padic::PsiChar;

// Bessel frame for V = W^sharp ⊕ (E + E^dual) with n = m + 1 + 2r.
// Basis order (indices 0..n-1):
//   0..r-1    : e_1 .. e_r                    (E, totally isotropic)
//   r         : e_{r+1}, the special vector   (norm 1, lifts e in L)
//   r+1..r+m  : orthogonal basis of W
//   n-r..n-1  : e_r^dual .. e_1^dual          (E^dual; e_i^dual at index n-i)
// Gram: (e_i, e_j^dual) = delta_ij, (v, v) = 1, W diagonal.
// The same index layout is used for the symmetric space S_n (standard basis,
// no form), so normal forms are antidiagonal in both pictures.
struct BesselFrame {
  int m = 1, r = 0;
  HermSpace space;  // split W^sharp: standard lattice is self-dual

  int n() const { return m + 1 + 2 * r; }
  int special_index() const { return r; }
  int w_index(int l) const { return r + 1 + l; }       // 0 <= l < m
  int dual_index(int j) const { return n() - 1 - j; }  // pairs with index j, j < r

  static BesselFrame make(const padic::Ctx& c, int m, int r);

  // middle block W^sharp = <v, w_1..w_m> as its own (m+1)-dim split space
  HermSpace wsharp_space() const;
};

// non-split Hermitian space of dimension n: split Gram with one diagonal norm
// scaled by p
HermSpace split_space(const padic::Ctx& c, int n);
HermSpace nonsplit_space(const padic::Ctx& c, int n);

// Flag data of a self-dual lattice in the framed sense: the intersections
// E_i ∩ Λ must be framed (pivot p^0) for i = 1..r+1; then the graded middle
// splits as <e> ⊕ Λ^flat.
struct FlagData {
  // strictly upper unipotent (r+1)x(r+1) coordinates of the framed flag,
  // entries reduced mod O_F (a coset representative of N_{E#}(F)/N_{E#}(O_F))
  Mat flag_coset;
  Lattice wsharp;  // graded middle lattice Λ^sharp in W^sharp coordinates
  Lattice flat;    // Λ^flat ⊆ W (m-dim), the e-complement in Λ^sharp
};

// returns nullopt when the framed-flag membership fails (a filtered outcome,
// not an error); pre: Λ self-dual in the frame's space
std::optional<FlagData> flag_data(const BesselFrame& F, const Lattice& L);

// lambda of the framed-flag coset: sum of the first superdiagonal entries
padic::Fe lambda_of_flag(const BesselFrame& F, const Mat& flag_coset);

// psi(Λ) = psi(lambda(u)) for u the framed-flag coset; requires flag_data
Cyc psi_of_lattice(const BesselFrame& F, const PsiChar& psi, const Lattice& L);

}  // namespace orbital::herm
