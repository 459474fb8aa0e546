#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "malign/permutation.hpp"

namespace malign {

/// Unordered vertex pair in canonical form (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Builds the canonical form of {a, b}; rejects self-loops.
Edge make_edge(Vertex a, Vertex b);

/// σ({u,v}) = {σ(u), σ(v)}. Throws on self-loops and out-of-range endpoints.
Edge edge_action(const Permutation& sigma, Edge e);

using EdgeId = std::uint32_t;

/// Lexicographic enumeration of the C(n,2) pairs {u,v}, u < v.
class EdgeIndex {
 public:
  EdgeIndex() = default;
  explicit EdgeIndex(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return pairs_.size(); }

  EdgeId index(Vertex a, Vertex b) const;
  EdgeId index(Edge e) const { return index(e.u, e.v); }
  Edge pair(EdgeId id) const { return pairs_[id]; }

  /// Id of σ(e) for the edge with id `id`; unchecked fast path.
  EdgeId act(const Permutation& sigma, EdgeId id) const {
    const Edge e = pairs_[id];
    return lookup_[sigma(e.u) * n_ + sigma(e.v)];
  }
  EdgeId lookup(Vertex a, Vertex b) const { return lookup_[a * n_ + b]; }

  friend bool operator==(const EdgeIndex& a, const EdgeIndex& b) { return a.n_ == b.n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> pairs_;
  std::vector<EdgeId> lookup_;  // n*n table, symmetric, diagonal unused
};

/// C(k, 2).
constexpr std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

}  // namespace malign
