#include "malign/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace malign {

bool is_automorphism(const EdgeSet& edges, const Permutation& sigma) {
  const EdgeIndex index(sigma.size());
  if (edges.capacity() != index.size()) throw std::invalid_argument("is_automorphism: size mismatch");
  for (EdgeId e = 0; e < index.size(); ++e) {
    if (edges.contains(e) && !edges.contains(index.act(sigma, e))) return false;
  }
  return true;
}

EdgeSet permute_edges(const EdgeSet& edges, const Permutation& sigma) {
  const EdgeIndex index(sigma.size());
  if (edges.capacity() != index.size()) throw std::invalid_argument("permute_edges: size mismatch");
  EdgeSet out(index.size());
  for (EdgeId e = 0; e < index.size(); ++e) {
    if (edges.contains(e)) out.insert(index.act(sigma, e));
  }
  return out;
}

std::vector<std::size_t> degrees(std::size_t n, const EdgeSet& edges) {
  const EdgeIndex index(n);
  std::vector<std::size_t> deg(n, 0);
  for (EdgeId e = 0; e < index.size(); ++e) {
    if (!edges.contains(e)) continue;
    ++deg[index.pair(e).u];
    ++deg[index.pair(e).v];
  }
  return deg;
}

std::vector<std::vector<Vertex>> connected_components(std::size_t n, const EdgeSet& edges) {
  const EdgeIndex index(n);
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < index.size(); ++e) {
    if (!edges.contains(e)) continue;
    const Vertex a = find(index.pair(e).u), b = find(index.pair(e).v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (Vertex x = 0; x < n; ++x) {
    const Vertex r = find(x);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

std::vector<Permutation> all_automorphisms(std::size_t n, const EdgeSet& edges, std::size_t max_n) {
  if (n > max_n) throw StateSpaceTooLarge("all_automorphisms: n exceeds the brute-force cap");
  std::vector<Vertex> images(n);
  std::iota(images.begin(), images.end(), Vertex{0});
  std::vector<Permutation> out;
  do {
    Permutation sigma(images);
    if (is_automorphism(edges, sigma)) out.push_back(std::move(sigma));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

EdgeSet edge_set_from_bits(std::size_t n, std::uint64_t bits) {
  const auto m = static_cast<std::size_t>(choose2(static_cast<std::int64_t>(n)));
  if (m > 64) throw std::invalid_argument("edge_set_from_bits: more than 64 edges");
  EdgeSet out(m);
  for (std::size_t e = 0; e < m; ++e) {
    if ((bits >> e) & 1u) out.insert(static_cast<EdgeId>(e));
  }
  return out;
}

}  // namespace malign
