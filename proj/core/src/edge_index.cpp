#include "malign/edge_index.hpp"

#include <stdexcept>
#include <utility>

namespace malign {

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("edge: self-loop");
  if (a > b) std::swap(a, b);
  return Edge{a, b};
}

Edge edge_action(const Permutation& sigma, Edge e) {
  if (e.u == e.v) throw std::invalid_argument("edge_action: self-loop");
  if (e.u >= sigma.size() || e.v >= sigma.size()) {
    throw std::invalid_argument("edge_action: vertex out of range");
  }
  return make_edge(sigma(e.u), sigma(e.v));
}

EdgeIndex::EdgeIndex(std::size_t n) : n_(n), lookup_(n * n, 0) {
  pairs_.reserve(n * (n - (n > 0)) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const auto id = static_cast<EdgeId>(pairs_.size());
      pairs_.push_back(Edge{u, v});
      lookup_[u * n + v] = id;
      lookup_[v * n + u] = id;
    }
  }
}

EdgeId EdgeIndex::index(Vertex a, Vertex b) const {
  if (a == b) throw std::invalid_argument("EdgeIndex: self-loop");
  if (a >= n_ || b >= n_) throw std::invalid_argument("EdgeIndex: vertex out of range");
  return lookup_[a * n_ + b];
}

}  // namespace malign
