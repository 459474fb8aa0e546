#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "malign/alignment.hpp"
#include "malign/metrics.hpp"
#include "malign/models.hpp"
#include "malign/posterior.hpp"

namespace malign {

enum class EstimatorMethod { exhaustive_map, ball_optimal, anneal, greedy };

EstimatorMethod parse_estimator(std::string_view name);
std::string_view to_string(EstimatorMethod method);

struct EstimatorResult {
  Alignment estimate;
  double score = 0;            // log-weight, ball mass, or −energy for search methods
  EstimatorMethod method = EstimatorMethod::exhaustive_map;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t ties = 1;      // alignments sharing the optimal score (exhaustive methods)
  double energy = 0;           // Hamiltonian of the estimate (search methods)
};

/// Highest log-weight; the first in enumeration order wins ties.
EstimatorResult map_exhaustive(const PosteriorTable& table);

struct ConcentrationReport {
  double r = 0;
  Metric metric = Metric::d;
  double c_n = 0;
  Alignment argmax_center;
};

/// C_n(r) = max over centers x of ℙ_post(B(x, r)).
ConcentrationReport concentration(const PosteriorTable& table, double r, Metric metric);

/// Center of the heaviest radius-r ball; score is its mass.
EstimatorResult ball_optimal(const PosteriorTable& table, double r, Metric metric);

struct AnnealSchedule {
  double t0 = 0;                            // 0 selects 2/β of the model
  double gamma = 0.999;                     // geometric cooling factor, in (0,1)
  std::uint64_t moves = 500'000;
  std::uint64_t moves_per_temperature = 100;
  std::uint64_t check_every = 1000;         // full-energy recomputation period
  double check_tolerance = 1e-6;
  std::size_t max_n = 200;

  void validate() const;
};

/// Simulated annealing on the Gaussian Hamiltonian with Metropolis acceptance
/// exp(−ΔH/T). Returns the best state seen.
EstimatorResult anneal(const GaussianObservation& observed, double rho, const AnnealSchedule& schedule,
                       std::uint64_t seed);
/// Same on the exact ER Hamiltonian.
EstimatorResult anneal(const ErObservation& observed, const ErParams& params, const AnnealSchedule& schedule,
                       std::uint64_t seed);

/// Zero-temperature descent with the same moves.
EstimatorResult greedy(const GaussianObservation& observed, const AnnealSchedule& schedule, std::uint64_t seed);
EstimatorResult greedy(const ErObservation& observed, const ErParams& params, const AnnealSchedule& schedule,
                       std::uint64_t seed);

OverlapReport score(const Alignment& estimate, const Alignment& truth);

}  // namespace malign
