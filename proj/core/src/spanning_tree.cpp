#include "malign/spanning_tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace malign {

WeightedCompleteGraph::WeightedCompleteGraph(std::size_t p) : x_(p, std::vector<double>(p, 0.0)) {}

WeightedCompleteGraph::WeightedCompleteGraph(std::vector<std::vector<double>> x) : x_(std::move(x)) {
  const std::size_t p = x_.size();
  for (std::size_t i = 0; i < p; ++i) {
    if (x_[i].size() != p) throw std::invalid_argument("WeightedCompleteGraph: matrix must be square");
    if (x_[i][i] != 0.0) throw std::invalid_argument("WeightedCompleteGraph: diagonal must be zero");
    for (std::size_t j = 0; j < p; ++j) {
      if (x_[i][j] != x_[j][i]) throw std::invalid_argument("WeightedCompleteGraph: matrix must be symmetric");
      if (!(x_[i][j] >= 0.0 && x_[i][j] <= 1.0)) throw std::invalid_argument("WeightedCompleteGraph: weights must lie in [0,1]");
    }
  }
}

WeightedCompleteGraph WeightedCompleteGraph::constant(std::size_t p, double w) {
  WeightedCompleteGraph g(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) g.set(i, j, w);
  }
  return g;
}

WeightedCompleteGraph WeightedCompleteGraph::uniform(std::size_t p, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  WeightedCompleteGraph g(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) g.set(i, j, unit(rng));
  }
  return g;
}

void WeightedCompleteGraph::set(std::size_t i, std::size_t j, double w) {
  if (i == j) throw std::invalid_argument("WeightedCompleteGraph: no self-loops");
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("WeightedCompleteGraph: weights must lie in [0,1]");
  x_[i][j] = x_[j][i] = w;
}

double WeightedCompleteGraph::mean_square() const {
  const std::size_t p = size();
  if (p < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) s += x_[i][j] * x_[i][j];
    }
  }
  return s / static_cast<double>(p * (p - 1));
}

SpanningTree max_spanning_tree(const WeightedCompleteGraph& g) {
  const std::size_t p = g.size();
  if (p == 0) throw std::invalid_argument("max_spanning_tree: empty graph");
  SpanningTree tree;
  std::vector<bool> in(p, false);
  std::vector<double> best(p, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> link(p, 0);
  in[0] = true;
  for (std::size_t v = 1; v < p; ++v) {
    best[v] = g(0, v);
    link[v] = 0;
  }
  for (std::size_t step = 1; step < p; ++step) {
    std::size_t pick = p;
    for (std::size_t v = 0; v < p; ++v) {
      if (!in[v] && (pick == p || best[v] > best[pick])) pick = v;
    }
    in[pick] = true;
    tree.weight += best[pick];
    tree.edges.emplace_back(link[pick], pick);
    for (std::size_t v = 0; v < p; ++v) {
      if (!in[v] && g(pick, v) > best[v]) {
        best[v] = g(pick, v);
        link[v] = pick;
      }
    }
  }
  return tree;
}

double max_spanning_tree_exhaustive(const WeightedCompleteGraph& g) {
  const std::size_t p = g.size();
  if (p <= 1) return 0.0;
  if (p == 2) return g(0, 1);
  const std::size_t len = p - 2;
  std::vector<std::size_t> code(len, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    // Prüfer decode.
    std::vector<std::size_t> degree(p, 1);
    for (auto c : code) ++degree[c];
    double w = 0.0;
    for (auto c : code) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      w += g(leaf, c);
      --degree[leaf];
      --degree[c];
    }
    std::size_t a = p, b = p;
    for (std::size_t v = 0; v < p; ++v) {
      if (degree[v] == 1) (a == p ? a : b) = v;
    }
    w += g(a, b);
    best = std::max(best, w);

    std::size_t k = 0;
    while (k < len && ++code[k] == p) code[k++] = 0;
    if (k == len) break;
  }
  return best;
}

double greedy_order_score(const WeightedCompleteGraph& g, const Permutation& tau) {
  const std::size_t p = g.size();
  if (tau.size() != p) throw std::invalid_argument("greedy_order_score: tau must permute the p vertices");
  if (p < 2) throw std::invalid_argument("greedy_order_score: p must be >= 2");
  double total = 0.0;
  for (std::size_t i = 1; i < p; ++i) {
    double top = 0.0;
    for (std::size_t j = 0; j < i; ++j) top = std::max(top, g(tau(j), tau(i)));
    total += top;
  }
  return total / static_cast<double>(p - 1);
}

SpanningBoundCheck check_spanning_bound(const WeightedCompleteGraph& g, double tolerance) {
  const std::size_t p = g.size();
  if (p < 2) throw std::invalid_argument("check_spanning_bound: p must be >= 2");
  SpanningBoundCheck r;
  r.lhs = max_spanning_tree(g).weight / static_cast<double>(p - 1);
  const double s = g.mean_square();
  r.rhs = 2.0 * s / (1.0 + s);
  r.ok = r.lhs >= r.rhs - tolerance;
  return r;
}

}  // namespace malign
