#pragma once

#include <cstdint>
#include <vector>

#include "malign/alignment.hpp"
#include "malign/metrics.hpp"

namespace malign {

/// d_ij matrices of every alignment of (n, p) against `truth`, in rank order.
/// Reused across many threshold matrices in a sweep.
class DijCensus {
 public:
  DijCensus(std::size_t n, std::size_t p, const Alignment& truth, std::uint64_t cap = kDefaultEnumerationCap);
  DijCensus(std::size_t n, std::size_t p, std::uint64_t cap = kDefaultEnumerationCap)
      : DijCensus(n, p, Alignment::identity(n, p), cap) {}

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }

  /// F(d) = #{σ : d_ij(σ) ≥ d_ij for all i ≠ j}.
  std::uint64_t count(const CountMatrix& thresholds) const;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<std::vector<std::uint8_t>> rows_;  // off-diagonal upper triangle per alignment
};

std::uint64_t count_F(std::size_t n, std::size_t p, const CountMatrix& d, const Alignment& truth,
                      std::uint64_t cap = kDefaultEnumerationCap);

struct BoundCheck {
  std::uint64_t count = 0;
  double log_count = 0;
  double log_bound = 0;
  bool ok = false;
};

/// log k! for k ≤ n via a table.
double log_factorial(std::size_t k);

/// log of (n!)^{p−1} / (Π_{i≠j} d_ij!)^{1/p}.
double log_usable_bound(std::size_t n, const CountMatrix& d);

/// log of (n!)^{p−1} / Π_{i=2..p} (max_{j<i} d_{τ(j)τ(i)})!, τ a permutation of the p graphs.
double log_permcount_bound(std::size_t n, const CountMatrix& d, const Permutation& tau);

/// (1/p) Σ_{i≠j} log d_ij! ≤ E_τ[Σ_i log D_i(τ)!] over all p! orders.
struct AveragingCheck {
  double lhs = 0;
  double rhs = 0;
  bool ok = false;
};
AveragingCheck check_order_averaging(const CountMatrix& d);

/// Throws std::invalid_argument unless d is symmetric with entries in [0, n].
void validate_thresholds(std::size_t n, std::size_t p, const CountMatrix& d);

BoundCheck check_usable_bound(const DijCensus& census, const CountMatrix& d);
BoundCheck check_permcount_bound(const DijCensus& census, const CountMatrix& d, const Permutation& tau);

}  // namespace malign
