#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "malign/permutation.hpp"
#include "malign/rng.hpp"

namespace malign {

/// Complete graph on p vertices with symmetric weights in [0,1] and zero diagonal.
class WeightedCompleteGraph {
 public:
  explicit WeightedCompleteGraph(std::size_t p);
  /// Throws unless the matrix is square, symmetric, zero on the diagonal and in [0,1].
  explicit WeightedCompleteGraph(std::vector<std::vector<double>> x);

  static WeightedCompleteGraph constant(std::size_t p, double w);
  static WeightedCompleteGraph uniform(std::size_t p, Rng& rng);

  std::size_t size() const { return x_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return x_[i][j]; }
  void set(std::size_t i, std::size_t j, double w);

  /// S̄ = Σ_{i≠j} x_ij² / (p(p−1)).
  double mean_square() const;

 private:
  std::vector<std::vector<double>> x_;
};

struct SpanningTree {
  double weight = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (attached-to, new vertex) in insertion order
};

/// Prim's algorithm from vertex 0; ties go to the smallest vertex index.
SpanningTree max_spanning_tree(const WeightedCompleteGraph& g);

/// Maximum over all p^{p−2} labelled spanning trees (Prüfer enumeration).
double max_spanning_tree_exhaustive(const WeightedCompleteGraph& g);

/// S*(τ): insertion order τ, each new vertex attached to its heaviest earlier
/// neighbour, total weight divided by p−1.
double greedy_order_score(const WeightedCompleteGraph& g, const Permutation& tau);

struct SpanningBoundCheck {
  double lhs = 0;  // max spanning tree weight / (p−1)
  double rhs = 0;  // 2S̄ / (1 + S̄)
  bool ok = false;
};

SpanningBoundCheck check_spanning_bound(const WeightedCompleteGraph& g, double tolerance = 1e-12);

}  // namespace malign
