#pragma once

#include <cstdint>
#include <vector>

#include "malign/graph.hpp"

namespace malign {

struct AutomorphismBoundCheck {
  std::uint64_t count = 0;  // automorphisms mapping every component to itself
  double bound = 1;         // Π_v d_v!
  bool ok = false;          // count ≤ bound
  /// Π over components C of v(C)·Π_{u∈C} d_u!, the bound the recursive
  /// neighbourhood argument actually delivers. Always holds.
  double rooted_bound = 1;
  bool rooted_ok = false;
};

/// Exhaustive per-component count; n ≤ max_n.
AutomorphismBoundCheck component_preserving_automorphism_bound(std::size_t n, const EdgeSet& edges,
                                                               std::size_t max_n = 10);

struct SymmetryClass {
  std::vector<std::vector<Vertex>> components;  // pairwise isomorphic, ordered by smallest vertex
};

struct ComponentSymmetries {
  std::vector<SymmetryClass> classes;       // unprotected components grouped by isomorphism type
  double count_lower_bound = 1;             // Π_c ⌈m_c!/3⌉
  std::vector<Permutation> automorphisms;   // identity first; each verified
};

/// Automorphisms that fix `protected_vertices` pointwise and permute isomorphic
/// components lying entirely outside it. Every such component must have at
/// most max_component vertices. Materializes up to max_emit automorphisms.
ComponentSymmetries component_symmetries(std::size_t n, const EdgeSet& edges,
                                         const std::vector<Vertex>& protected_vertices,
                                         std::size_t max_emit = 64, std::size_t max_component = 8);

}  // namespace malign
