#include "malign/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "malign/csv.hpp"
#include "malign/parallel.hpp"

namespace malign {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

PosteriorTable::PosteriorTable(std::size_t n, std::size_t p, std::vector<double> log_weights,
                               bool truth_rebased)
    : n_(n), p_(p), log_weights_(std::move(log_weights)), truth_rebased_(truth_rebased) {
  if (log_weights_.empty()) throw std::invalid_argument("PosteriorTable: empty table");
  log_partition_ = log_sum_exp(log_weights_);
}

double PosteriorTable::probability(std::uint64_t rank) const {
  return std::exp(log_weights_[rank] - log_partition_);
}

void PosteriorTable::write_csv(std::ostream& out) const {
  CsvWriter csv(out);
  csv.row({"alignment", "log_weight", "probability"});
  AlignmentRange range(n_, p_, std::numeric_limits<std::uint64_t>::max());
  std::uint64_t rank = 0;
  for (const auto& a : range) {
    csv.row({a.to_string(), format_double(log_weights_[rank]), format_double(probability(rank))});
    ++rank;
  }
}

PosteriorTable build_posterior_table(std::size_t n, std::size_t p, const LogWeightFn& fn,
                                     bool truth_rebased, std::uint64_t cap, std::size_t threads) {
  const AlignmentRange range(n, p, cap);
  const std::uint64_t total = range.size();
  std::vector<double> log_weights(total);

  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(total, begin + kBlock);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      log_weights[rank] = fn(alignment_unrank(n, p, rank));
    }
  });
  return PosteriorTable(n, p, std::move(log_weights), truth_rebased);
}

double restricted_partition(const PosteriorTable& table, const Alignment& center, double r, Metric metric) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("restricted_partition: r must lie in [0,1]");
  if (center.n() != table.n() || center.p() != table.p()) {
    throw std::invalid_argument("restricted_partition: center dimension mismatch");
  }
  std::vector<double> inside;
  std::uint64_t rank = 0;
  for (const auto& sigma : AlignmentRange(table.n(), table.p(), std::numeric_limits<std::uint64_t>::max())) {
    if (within_distance(overlap_multi(center, sigma), metric, r)) inside.push_back(table.log_weight(rank));
    ++rank;
  }
  return log_sum_exp(inside);
}

}  // namespace malign
