#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "malign/alignment.hpp"
#include "malign/metrics.hpp"

namespace malign {

/// Numerically stable log Σ exp(x_k), summed in index order.
double log_sum_exp(std::span<const double> values);

/// Exhaustive log-weight table over every alignment of (n, p), indexed by
/// alignment_rank. Probabilities are exp(log_weight − log_partition).
class PosteriorTable {
 public:
  PosteriorTable(std::size_t n, std::size_t p, std::vector<double> log_weights, bool truth_rebased);

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  std::size_t size() const { return log_weights_.size(); }
  bool truth_rebased() const { return truth_rebased_; }

  double log_weight(std::uint64_t rank) const { return log_weights_[rank]; }
  double log_partition() const { return log_partition_; }
  double probability(std::uint64_t rank) const;
  std::span<const double> log_weights() const { return log_weights_; }

  Alignment alignment(std::uint64_t rank) const { return alignment_unrank(n_, p_, rank); }

  /// CSV: alignment, log_weight, probability (one row per alignment).
  void write_csv(std::ostream& out) const;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> log_weights_;
  double log_partition_;
  bool truth_rebased_;
};

using LogWeightFn = std::function<double(const Alignment&)>;

/// Evaluates fn on every alignment, in fixed blocks so the result is identical
/// for any thread count. Throws StateSpaceTooLarge above `cap`.
PosteriorTable build_posterior_table(std::size_t n, std::size_t p, const LogWeightFn& fn,
                                     bool truth_rebased, std::uint64_t cap = kDefaultEnumerationCap,
                                     std::size_t threads = 1);

/// log Σ_{σ ∈ B(center, r)} w(σ) for the closed ball in the chosen metric.
double restricted_partition(const PosteriorTable& table, const Alignment& center, double r, Metric metric);

}  // namespace malign
