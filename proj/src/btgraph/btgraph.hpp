#pragma once

#include <string>
#include <vector>

#include "hermlat/enumerate.hpp"

namespace orbital::bt {

using herm::HermSpace;
using herm::Lattice;
using padic::Ctx;
using padic::Fe;

// Combinatorial shadow of the Bruhat-Tits stratification of the non-split
// unitary RZ space: vertex lattices as nodes, adjacency when the sum is
// again a vertex lattice. In the non-split odd-dimensional space all types
// are odd.
struct BTGraph {
  std::vector<Lattice> nodes;
  std::vector<int> type;                      // t(node)
  std::vector<std::pair<int, int>> edges;     // i < j, sum is a vertex lattice
  long long window_a = 0, window_b = 0;

  int find(const Lattice& L) const;
};

// all vertex lattices with p^a ref ⊆ Λ ⊆ p^{-b} ref
std::vector<Lattice> enumerate_vertex_lattices(const HermSpace& V, const Lattice& ref,
                                               long long a, long long b,
                                               long long cap = 200000000);

BTGraph build_graph(const HermSpace& V, const Lattice& ref, long long a, long long b);

// Vert_E (containment) and Vert_E^dagger (containment with saturation
// E = span(E) ∩ Λ) among the given nodes
std::vector<int> kr_support_nodes(const HermSpace& V, const BTGraph& G,
                                  const std::vector<std::vector<Fe>>& Egens, bool dagger);

// flat map Λ -> (E^perp ∩ Λ)/E for rank-one E = <u>, with the induced form
// on u^perp/u; returns the image lattice and the induced space
struct FlatImage {
  HermSpace space;
  Lattice lattice;
  int type = 0;
};
FlatImage flat_map(const HermSpace& V, const std::vector<Fe>& u, const Lattice& L);

// connected components of the dagger locus Z(u)^{dagger,red} in the window:
// nodes Vert^dagger_<u>, edges only when the sum stays saturated
struct Components {
  BTGraph graph;                   // full window graph
  std::vector<int> dagger_nodes;   // indices into graph.nodes
  std::vector<std::vector<int>> components;  // partition of dagger_nodes
};
Components components_z_dagger(const HermSpace& V, const Lattice& ref,
                               const std::vector<Fe>& u, long long a, long long b);

// reference vertex lattice of type 1 in the non-split space diag(1,..,1,p):
// the standard lattice
Lattice reference_vertex(const HermSpace& V);
// an isotropic vector in the non-split space with u in ref primitive
std::vector<Fe> isotropic_vector(const HermSpace& V);

std::string graph_dot(const BTGraph& G);

}  // namespace orbital::bt
