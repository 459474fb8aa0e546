#include "malign/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace malign {

EstimatorMethod parse_estimator(std::string_view name) {
  if (name == "exhaustive_map" || name == "map") return EstimatorMethod::exhaustive_map;
  if (name == "ball_optimal") return EstimatorMethod::ball_optimal;
  if (name == "anneal") return EstimatorMethod::anneal;
  if (name == "greedy") return EstimatorMethod::greedy;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

std::string_view to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::exhaustive_map: return "exhaustive_map";
    case EstimatorMethod::ball_optimal: return "ball_optimal";
    case EstimatorMethod::anneal: return "anneal";
    case EstimatorMethod::greedy: return "greedy";
  }
  return "?";
}

EstimatorResult map_exhaustive(const PosteriorTable& table) {
  if (table.size() == 0) throw std::invalid_argument("map_exhaustive: empty table");
  std::uint64_t best = 0, ties = 1;
  for (std::uint64_t rank = 1; rank < table.size(); ++rank) {
    if (table.log_weight(rank) > table.log_weight(best)) {
      best = rank;
      ties = 1;
    } else if (table.log_weight(rank) == table.log_weight(best)) {
      ++ties;
    }
  }
  EstimatorResult r;
  r.estimate = table.alignment(best);
  r.score = table.log_weight(best);
  r.method = EstimatorMethod::exhaustive_map;
  r.iterations = table.size();
  r.ties = ties;
  return r;
}

ConcentrationReport concentration(const PosteriorTable& table, double r, Metric metric) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("concentration: r must lie in [0,1]");
  const std::uint64_t size = table.size();
  std::vector<Alignment> all;
  std::vector<double> prob;
  all.reserve(size);
  prob.reserve(size);
  for (std::uint64_t rank = 0; rank < size; ++rank) {
    all.push_back(table.alignment(rank));
    prob.push_back(table.probability(rank));
  }
  ConcentrationReport out{r, metric, -1.0, {}};
  std::uint64_t best = 0;
  for (std::uint64_t c = 0; c < size; ++c) {
    double mass = 0.0;
    for (std::uint64_t s = 0; s < size; ++s) {
      if (within_distance(overlap_multi(all[c], all[s]), metric, r)) mass += prob[s];
    }
    if (mass > out.c_n) {
      out.c_n = mass;
      best = c;
    }
  }
  out.argmax_center = all[best];
  return out;
}

EstimatorResult ball_optimal(const PosteriorTable& table, double r, Metric metric) {
  const ConcentrationReport c = concentration(table, r, metric);
  EstimatorResult out;
  out.estimate = c.argmax_center;
  out.score = c.c_n;
  out.method = EstimatorMethod::ball_optimal;
  out.iterations = table.size();
  return out;
}

OverlapReport score(const Alignment& estimate, const Alignment& truth) { return overlap_multi(estimate, truth); }

}  // namespace malign
