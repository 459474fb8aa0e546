#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "malign/estimators.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/models.hpp"
#include "malign/rng.hpp"

using namespace malign;
using Catch::Matchers::WithinAbs;

namespace {

PosteriorTable uniform_table(std::size_t n, std::size_t p) {
  return build_posterior_table(n, p, [](const Alignment&) { return 0.0; }, false);
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("estimator names", "[estimators]") {
  CHECK(parse_estimator("map") == EstimatorMethod::exhaustive_map);
  CHECK(parse_estimator("anneal") == EstimatorMethod::anneal);
  CHECK(to_string(EstimatorMethod::ball_optimal) == "ball_optimal");
  CHECK_THROWS_AS(parse_estimator("bogus"), std::invalid_argument);
}

TEST_CASE("MAP on degenerate tables", "[estimators]") {
  const EstimatorResult single = map_exhaustive(uniform_table(1, 2));
  CHECK(single.estimate == Alignment::identity(1, 2));
  CHECK(single.ties == 1);

  const EstimatorResult flat = map_exhaustive(uniform_table(4, 2));
  CHECK(flat.estimate == Alignment::identity(4, 2));
  CHECK(flat.ties == 24);
}

TEST_CASE("MAP maximizes the table", "[estimators]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GaussianSample s = sample_gaussian({4, 3, 0.5}, seed);
    const PosteriorTable t = gaussian_posterior_table(s.observed, 0.5);
    const EstimatorResult r = map_exhaustive(t);
    for (std::uint64_t k = 0; k < t.size(); ++k) CHECK(t.log_weight(k) <= r.score);
    CHECK(r.score == t.log_weight(alignment_rank(r.estimate)));
  }
}

TEST_CASE("MAP recovers the truth at high correlation", "[estimators][slow]") {
  int hits = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const GaussianSample s = sample_gaussian({5, 2, 0.95}, derive_seed(3, k));
    hits += map_exhaustive(gaussian_posterior_table(s.observed, 0.95)).estimate == s.truth ? 1 : 0;
  }
  CHECK(hits >= 160);
}

TEST_CASE("concentration", "[estimators]") {
  const PosteriorTable flat = uniform_table(4, 2);
  CHECK_THAT(concentration(flat, 1.0, Metric::d).c_n, WithinAbs(1.0, 1e-12));
  CHECK_THAT(concentration(flat, 0.0, Metric::d).c_n, WithinAbs(1.0 / 24.0, 1e-12));
  CHECK_THROWS_AS(concentration(flat, -0.1, Metric::d), std::invalid_argument);

  const GaussianSample s = sample_gaussian({4, 2, 0.7}, 4);
  const PosteriorTable t = gaussian_posterior_table(s.observed, 0.7);
  double max_mass = 0;
  for (std::uint64_t k = 0; k < t.size(); ++k) max_mass = std::max(max_mass, t.probability(k));
  for (Metric m : {Metric::d, Metric::d_w, Metric::d_c}) {
    CHECK_THAT(concentration(t, 0.0, m).c_n, WithinAbs(max_mass, 1e-12));
    double previous = 0;
    for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double c = concentration(t, r, m).c_n;
      CHECK(c >= previous - 1e-15);
      previous = c;
    }
  }
  const EstimatorResult ball = ball_optimal(t, 0.5, Metric::d);
  CHECK(ball.score == concentration(t, 0.5, Metric::d).c_n);
}

TEST_CASE("score", "[estimators]") {
  Rng rng = seeded_rng(5);
  const Alignment truth = random_alignment(8, 3, rng);
  CHECK(score(truth, truth).ov == 1.0);

  std::vector<Vertex> cycle(8);
  for (Vertex x = 0; x < 8; ++x) cycle[x] = (x + 1) % 8;
  const Alignment shifted({truth[0], compose(truth[1], Permutation(cycle)), truth[2]});
  CHECK(score(shifted, truth).ov == 0.0);
}

TEST_CASE("random alignments share one point on average", "[estimators][slow]") {
  Rng rng = seeded_rng(6);
  std::vector<double> fixed;
  for (int k = 0; k < 10000; ++k) {
    fixed.push_back(100.0 * score(random_alignment(100, 2, rng), random_alignment(100, 2, rng)).ov);
  }
  CHECK(std::abs(mean_of(fixed) - 1.0) < 4.0 * std::sqrt(variance_of(fixed) / 10000.0));
}

TEST_CASE("schedule validation", "[estimators]") {
  AnnealSchedule s;
  CHECK_NOTHROW(s.validate());
  s.gamma = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.gamma = 0.99;
  s.moves_per_temperature = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  const GaussianSample g = sample_gaussian({5, 2, 0.5}, 1);
  AnnealSchedule small;
  small.max_n = 4;
  CHECK_THROWS_AS(anneal(g.observed, 0.5, small, 1), std::invalid_argument);
}

TEST_CASE("annealing recovers noiseless instances", "[estimators][slow]") {
  AnnealSchedule schedule;
  schedule.t0 = 10.0;
  int hits = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const GaussianSample s = sample_gaussian({30, 2, 1.0}, derive_seed(7, k));
    const EstimatorResult r = anneal(s.observed, 1.0, schedule, derive_seed(7, k, 1));
    hits += score(r.estimate, s.truth).ov == 1.0 ? 1 : 0;
  }
  CHECK(hits >= 48);
}

TEST_CASE("annealing without signal is no better than chance", "[estimators][slow]") {
  // The best-seen state still fits the noise, so compare the overlap with the
  // truth against that of a uniform alignment.
  AnnealSchedule schedule;
  schedule.moves = 20000;
  Rng rng = seeded_rng(8);
  std::vector<double> annealed, random;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const GaussianSample s = sample_gaussian({30, 2, 1e-9}, derive_seed(8, k));
    annealed.push_back(30.0 * score(anneal(s.observed, 1e-9, schedule, k).estimate, s.truth).ov);
    random.push_back(30.0 * score(random_alignment(30, 2, rng), s.truth).ov);
  }
  const double se = std::sqrt(variance_of(annealed) / 50.0 + variance_of(random) / 50.0);
  CHECK(std::abs(mean_of(annealed) - mean_of(random)) < 3.0 * std::max(se, 0.1));
}

TEST_CASE("search energies are consistent", "[estimators]") {
  AnnealSchedule schedule;
  schedule.moves = 50000;
  schedule.check_every = 100;

  const GaussianSample g = sample_gaussian({20, 3, 0.8}, 9);
  for (const EstimatorResult& r : {anneal(g.observed, 0.8, schedule, 1), greedy(g.observed, schedule, 1)}) {
    CHECK_THAT(r.energy, WithinAbs(hamiltonian(g.observed, r.estimate), 1e-6 * std::max(1.0, std::abs(r.energy))));
    CHECK(r.estimate[0].is_identity());
  }

  const ErSample e = sample_er({20, 3, 4.0, 0.8}, 10);
  for (const EstimatorResult& r : {anneal(e.observed, e.params, schedule, 2), greedy(e.observed, e.params, schedule, 2)}) {
    CHECK_THAT(r.energy, WithinAbs(er_log_posterior(e.observed, r.estimate, e.params).hamiltonian_exact, 1e-9));
  }
}

TEST_CASE("ER annealing reaches the exhaustive optimum on tiny instances", "[estimators]") {
  AnnealSchedule schedule;
  schedule.moves = 20000;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const ErSample s = sample_er({5, 2, 3.0, 0.8}, derive_seed(11, k));
    const EstimatorResult best = map_exhaustive(er_posterior_table(s.observed, s.params));
    const EstimatorResult r = anneal(s.observed, s.params, schedule, k);
    CHECK_THAT(-r.energy * std::log(5.0), WithinAbs(best.score, 1e-9));
  }
}

TEST_CASE("annealing is deterministic for a seed", "[estimators]") {
  AnnealSchedule schedule;
  schedule.moves = 20000;
  const GaussianSample g = sample_gaussian({15, 3, 0.6}, 12);
  CHECK(anneal(g.observed, 0.6, schedule, 3).estimate == anneal(g.observed, 0.6, schedule, 3).estimate);
}
