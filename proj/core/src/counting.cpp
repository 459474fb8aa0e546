#include "malign/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace malign {

DijCensus::DijCensus(std::size_t n, std::size_t p, const Alignment& truth, std::uint64_t cap) : n_(n), p_(p) {
  if (truth.n() != n || truth.p() != p) throw std::invalid_argument("DijCensus: truth dimension mismatch");
  if (n > 255) throw std::invalid_argument("DijCensus: n too large");
  const AlignmentRange range(n, p, cap);
  rows_.reserve(range.size());
  for (const auto& sigma : range) {
    const CountMatrix d = dij_matrix(sigma, truth);
    std::vector<std::uint8_t> row;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) row.push_back(static_cast<std::uint8_t>(d(i, j)));
    }
    rows_.push_back(std::move(row));
  }
}

std::uint64_t DijCensus::count(const CountMatrix& thresholds) const {
  validate_thresholds(n_, p_, thresholds);
  std::vector<std::int64_t> want;
  for (std::size_t i = 0; i < p_; ++i) {
    for (std::size_t j = i + 1; j < p_; ++j) want.push_back(thresholds(i, j));
  }
  std::uint64_t c = 0;
  for (const auto& row : rows_) {
    bool ok = true;
    for (std::size_t k = 0; k < want.size() && ok; ++k) ok = row[k] >= want[k];
    c += ok;
  }
  return c;
}

std::uint64_t count_F(std::size_t n, std::size_t p, const CountMatrix& d, const Alignment& truth,
                      std::uint64_t cap) {
  return DijCensus(n, p, truth, cap).count(d);
}

double log_factorial(std::size_t k) {
  static const std::vector<double> table = [] {
    std::vector<double> t(256, 0.0);
    for (std::size_t i = 2; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (k < table.size()) return table[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

void validate_thresholds(std::size_t n, std::size_t p, const CountMatrix& d) {
  if (d.size() != p) throw std::invalid_argument("threshold matrix must be p x p");
  if (!d.is_symmetric()) throw std::invalid_argument("threshold matrix must be symmetric");
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j && (d(i, j) < 0 || d(i, j) > static_cast<std::int64_t>(n))) {
        throw std::invalid_argument("threshold entries must lie in [0, n]");
      }
    }
  }
}

double log_usable_bound(std::size_t n, const CountMatrix& d) {
  const std::size_t p = d.size();
  double denom = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) denom += log_factorial(static_cast<std::size_t>(d(i, j)));
    }
  }
  return static_cast<double>(p - 1) * log_factorial(n) - denom / static_cast<double>(p);
}

namespace {

double order_sum(const CountMatrix& d, const Permutation& tau) {
  double s = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    std::int64_t best = 0;
    for (std::size_t j = 0; j < i; ++j) best = std::max(best, d(tau(j), tau(i)));
    s += log_factorial(static_cast<std::size_t>(best));
  }
  return s;
}

}  // namespace

double log_permcount_bound(std::size_t n, const CountMatrix& d, const Permutation& tau) {
  if (tau.size() != d.size()) throw std::invalid_argument("log_permcount_bound: tau must permute the p graphs");
  return static_cast<double>(d.size() - 1) * log_factorial(n) - order_sum(d, tau);
}

AveragingCheck check_order_averaging(const CountMatrix& d) {
  const std::size_t p = d.size();
  AveragingCheck r;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) r.lhs += log_factorial(static_cast<std::size_t>(d(i, j)));
    }
  }
  r.lhs /= static_cast<double>(p);
  std::vector<Vertex> order(p);
  std::iota(order.begin(), order.end(), Vertex{0});
  double total = 0.0;
  std::size_t orders = 0;
  do {
    total += order_sum(d, Permutation(order));
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  r.rhs = total / static_cast<double>(orders);
  r.ok = r.lhs <= r.rhs + 1e-9;
  return r;
}

namespace {

BoundCheck finish(std::uint64_t count, double log_bound) {
  BoundCheck r;
  r.count = count;
  r.log_count = count == 0 ? -INFINITY : std::log(static_cast<double>(count));
  r.log_bound = log_bound;
  r.ok = r.log_count <= log_bound + 1e-9;
  return r;
}

}  // namespace

BoundCheck check_usable_bound(const DijCensus& census, const CountMatrix& d) {
  return finish(census.count(d), log_usable_bound(census.n(), d));
}

BoundCheck check_permcount_bound(const DijCensus& census, const CountMatrix& d, const Permutation& tau) {
  return finish(census.count(d), log_permcount_bound(census.n(), d, tau));
}

}  // namespace malign
