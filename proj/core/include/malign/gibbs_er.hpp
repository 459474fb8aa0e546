#pragma once

#include <cstdint>
#include <vector>

#include "malign/alignment.hpp"
#include "malign/models.hpp"
#include "malign/posterior.hpp"

namespace malign {

/// e_X for every subset X of the p graphs, indexed by bitmask (bit i = graph i).
struct TypeCounts {
  std::size_t p = 0;
  std::vector<std::int64_t> counts;  // size 2^p

  std::int64_t operator[](std::uint32_t mask) const { return counts[mask]; }
  std::int64_t total() const;
  /// Σ_{X≠∅} e_X: edges present in at least one aligned graph.
  std::int64_t present() const { return total() - counts[0]; }
};

/// Membership bitmask of each edge: bit i set iff π_i⁻¹(e) ∈ 𝒢^(i).
std::vector<std::uint32_t> edge_masks(const ErObservation& observed, const Alignment& pi);
TypeCounts type_counts(const ErObservation& observed, const Alignment& pi);

/// Probability that an edge is absent from every child: 1 − λ(1−(1−s)^p)/n.
double er_absent_probability(const ErParams& params);

/// Per-type energy coefficient 1 + log(a / (λ s^k (1−s)^{p−k})) / log n, for
/// k = |X| ≥ 1; entry 0 is zero.
std::vector<double> er_type_energies(const ErParams& params);

struct ErEnergyReport {
  double log_posterior_unnormalized = 0;  // Σ_{X≠∅} e_X log(q_X / a)
  double hamiltonian_exact = 0;            // −log posterior / log n
  std::int64_t edge_total = 0;             // Σ_{X≠∅} e_X, the leading-order energy
};

/// Throws std::domain_error unless n ≥ 3 and the absent-edge probability is in (0,1).
void check_er_regime(const ErParams& params);

ErEnergyReport er_log_posterior(const ErObservation& observed, const Alignment& pi, const ErParams& params);

PosteriorTable er_posterior_table(const ErObservation& observed, const ErParams& params,
                                  std::uint64_t cap = kDefaultEnumerationCap, std::size_t threads = 1);

/// Raised when the candidate permutation is not an automorphism of the
/// intersection graph, so the monotonicity statement does not apply.
class NotAnAutomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MonotonicityCheck {
  bool ok = false;
  std::int64_t before = 0;  // Σ_{X≠∅} e_X at π
  std::int64_t after = 0;   // at (Id, σπ_2, ..., σπ_p)
};

MonotonicityCheck check_automorphism_monotonicity(const ErObservation& observed, const Alignment& pi,
                                                  const Permutation& sigma);

}  // namespace malign
