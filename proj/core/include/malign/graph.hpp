#pragma once

#include <cstddef>
#include <vector>

#include "malign/models.hpp"

namespace malign {

/// σ(E) = E, with n taken from sigma.
bool is_automorphism(const EdgeSet& edges, const Permutation& sigma);

/// {σ(e) : e ∈ E}.
EdgeSet permute_edges(const EdgeSet& edges, const Permutation& sigma);

std::vector<std::size_t> degrees(std::size_t n, const EdgeSet& edges);

/// Connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(std::size_t n, const EdgeSet& edges);

/// Every automorphism by exhaustive search over 𝒮_n, in lexicographic order.
/// Throws StateSpaceTooLarge when n > max_n.
std::vector<Permutation> all_automorphisms(std::size_t n, const EdgeSet& edges, std::size_t max_n = 10);

/// Edge set from an integer whose bit k marks canonical edge id k.
EdgeSet edge_set_from_bits(std::size_t n, std::uint64_t bits);

}  // namespace malign
