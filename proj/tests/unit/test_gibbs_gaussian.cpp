#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "malign/edge_index.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/metrics.hpp"
#include "malign/models.hpp"
#include "malign/posterior.hpp"
#include "malign/rng.hpp"

using namespace malign;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("inverse temperature", "[gibbs_gaussian]") {
  CHECK_THAT(beta_of(0.5, 3), WithinRel(0.25, 1e-15));
  CHECK_THAT(beta_of(0.5, 2), WithinRel(1.0 / 3.0, 1e-15));
  CHECK_THAT(beta_of(1e-8, 4) / (1e-8 / 2), WithinAbs(1.0, 1e-6));
  CHECK_THROWS_AS(beta_of(0.0, 2), std::domain_error);
  CHECK_THROWS_AS(beta_of(1.0, 2), std::domain_error);
}

TEST_CASE("hamiltonian of constant graphs", "[gibbs_gaussian]") {
  const std::size_t n = 5;
  GaussianObservation obs{n, 2, WeightTable(2, std::vector<double>(choose2(n), 1.0))};
  Rng rng = seeded_rng(1);
  for (int k = 0; k < 10; ++k) {
    CHECK(hamiltonian(obs, random_alignment(n, 2, rng)) == -2.0 * static_cast<double>(choose2(n)));
  }
}

TEST_CASE("truth minimizes the hamiltonian when rho = 1", "[gibbs_gaussian]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GaussianSample s = sample_gaussian({4, 2, 1.0}, seed);
    double squares = 0;
    for (double w : s.latent[0]) squares += w * w;
    const double at_truth = hamiltonian(s.observed, s.truth);
    CHECK_THAT(at_truth, WithinAbs(-2.0 * squares, 1e-9));
    for (const auto& sigma : enumerate_alignments(4, 2)) CHECK(at_truth <= hamiltonian(s.observed, sigma) + 1e-12);
  }
}

TEST_CASE("observed and latent hamiltonians agree", "[gibbs_gaussian]") {
  Rng rng = seeded_rng(2);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const GaussianSample s = sample_gaussian({5, 3, 0.7}, derive_seed(2, k));
    const Alignment sigma = random_alignment(5, 3, rng);
    CHECK_THAT(hamiltonian(s.observed, sigma), WithinAbs(hamiltonian_latent(s, sigma), 1e-9));
  }
}

TEST_CASE("potential split", "[gibbs_gaussian]") {
  const GaussianSample s = sample_gaussian({6, 3, 0.5}, 4);
  const GaussianEnergyReport at_truth = potential_split(s, s.truth);
  CHECK(at_truth.potential == 0.0);
  CHECK(at_truth.v_diag == 0.0);
  CHECK(at_truth.v_off == 0.0);
  CHECK(at_truth.beta == beta_of(0.5, 3));

  Rng rng = seeded_rng(5);
  const double h_truth = hamiltonian(s.observed, s.truth);
  for (int k = 0; k < 50; ++k) {
    const Alignment sigma = random_alignment(6, 3, rng);
    const GaussianEnergyReport r = potential_split(s, sigma);
    CHECK_THAT(r.potential, WithinAbs(r.hamiltonian - h_truth, 1e-9));
    CHECK_THAT(r.potential, WithinAbs(-r.v_diag + r.v_off, 1e-12));
  }
}

TEST_CASE("mean of the diagonal potential", "[gibbs_gaussian][slow]") {
  // E[V_diag] = −ρ Σ_{i≠j} (C(n,2) − D_ij) for a fixed relative position.
  const std::size_t n = 20, p = 3;
  const double rho = 0.4;
  const std::size_t resamples = 10000;
  Rng rng = seeded_rng(6);
  const Alignment sigma = random_alignment(n, p, rng);
  double sum = 0, squares = 0;
  double expected = 0;
  for (std::size_t k = 0; k < resamples; ++k) {
    const GaussianSample s = sample_gaussian({n, p, rho}, derive_seed(6, k));
    // σ'_i = π_i* ∘ σ_i keeps the relative permutations σ_j σ_i⁻¹ fixed across resamples.
    std::vector<Permutation> perms;
    for (std::size_t i = 0; i < p; ++i) perms.push_back(compose(s.truth[i], sigma[i]));
    const Alignment shifted(perms);
    const double v = potential_split(s, shifted).v_diag;
    sum += v;
    squares += v * v;
    if (k == 0) {
      const CountMatrix d = edge_fixed_points(shifted, s.truth);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          if (i != j) expected -= rho * static_cast<double>(choose2(n) - d(i, j));
    }
  }
  const double mean = sum / resamples;
  const double se = std::sqrt((squares / resamples - mean * mean) / resamples);
  CHECK(std::abs(mean - expected) < 4 * se);
}

TEST_CASE("posterior table normalizes", "[gibbs_gaussian]") {
  const GaussianSample s = sample_gaussian({4, 2, 0.6}, 7);
  const PosteriorTable t = gaussian_posterior_table(s.observed, 0.6);
  double total = 0;
  for (std::uint64_t r = 0; r < t.size(); ++r) total += t.probability(r);
  CHECK_THAT(total, WithinAbs(1.0, 1e-9));
  CHECK_FALSE(t.truth_rebased());
}

TEST_CASE("posterior is uniform as rho vanishes", "[gibbs_gaussian]") {
  const GaussianSample s = sample_gaussian({4, 2, 1e-12}, 8);
  const PosteriorTable t = gaussian_posterior_table(s.observed, 1e-12);
  for (std::uint64_t r = 0; r < t.size(); ++r) CHECK_THAT(t.probability(r), WithinAbs(1.0 / 24.0, 1e-9));
}

TEST_CASE("truth-rebased partition function is at least one", "[gibbs_gaussian]") {
  for (std::size_t n = 3; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const GaussianSample s = sample_gaussian({n, 2, 0.5}, seed);
      const PosteriorTable t = gaussian_posterior_table(s.observed, 0.5, s.truth);
      CHECK(t.truth_rebased());
      CHECK(t.log_partition() >= 0.0);
      CHECK_THAT(t.log_weight(alignment_rank(s.truth)), WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("truth is the posterior mode more often as rho grows", "[gibbs_gaussian][slow]") {
  std::vector<double> rates;
  for (double rho : {0.2, 0.5, 0.8, 0.95}) {
    int hits = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
      const GaussianSample s = sample_gaussian({5, 2, rho}, derive_seed(9, k));
      const PosteriorTable t = gaussian_posterior_table(s.observed, rho);
      const auto w = t.log_weights();
      const auto best = static_cast<std::uint64_t>(std::max_element(w.begin(), w.end()) - w.begin());
      hits += best == alignment_rank(s.truth) ? 1 : 0;
    }
    rates.push_back(hits / 200.0);
  }
  for (std::size_t k = 0; k + 1 < rates.size(); ++k) CHECK(rates[k] <= rates[k + 1]);
}

TEST_CASE("restricted partition", "[gibbs_gaussian]") {
  const GaussianSample s = sample_gaussian({4, 2, 0.7}, 10);
  const PosteriorTable t = gaussian_posterior_table(s.observed, 0.7, s.truth);
  for (const auto& center : enumerate_alignments(4, 2)) {
    CHECK_THAT(restricted_partition(t, center, 1.0, Metric::d), WithinAbs(t.log_partition(), 1e-12));
    CHECK_THAT(restricted_partition(t, center, 0.0, Metric::d),
               WithinAbs(t.log_weight(alignment_rank(center)), 1e-12));
    double previous = -INFINITY;
    for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double z = restricted_partition(t, center, r, Metric::d);
      CHECK(z >= previous);
      previous = z;
    }
  }
  CHECK_THROWS_AS(restricted_partition(t, s.truth, 1.5, Metric::d), std::invalid_argument);
}

TEST_CASE("posterior is invariant under a common relabeling", "[gibbs_gaussian]") {
  // Relabel vertices of every observed graph by τ; alignment σ maps to τσ_iτ⁻¹
  // after re-fixing the first coordinate, which for σ_1 = Id is just τσ_iτ⁻¹.
  const std::size_t n = 4;
  const GaussianSample s = sample_gaussian({n, 2, 0.6}, 11);
  const EdgeIndex edges(n);
  Rng rng = seeded_rng(11);
  const Permutation tau = random_permutation(n, rng);
  GaussianObservation moved = s.observed;
  for (std::size_t i = 0; i < 2; ++i)
    for (EdgeId e = 0; e < edges.size(); ++e) moved.weights[i][edges.act(tau, e)] = s.observed.weights[i][e];
  const PosteriorTable a = gaussian_posterior_table(s.observed, 0.6);
  const PosteriorTable b = gaussian_posterior_table(moved, 0.6);
  const Permutation tau_inv = inverse(tau);
  for (const auto& sigma : enumerate_alignments(n, 2)) {
    const Alignment conj({Permutation::identity(n), compose(tau, compose(sigma[1], tau_inv))});
    CHECK_THAT(b.log_weight(alignment_rank(conj)), WithinAbs(a.log_weight(alignment_rank(sigma)), 1e-12));
  }
}

TEST_CASE("annealed rate", "[gibbs_gaussian]") {
  CHECK(annealed_rate(0.0, 0.3) == 0.0);
  CHECK_THAT(annealed_rate(1.0, 0.3), WithinAbs(-0.3, 1e-15));
  CHECK_THAT(annealed_rate(0.5, 0.1), WithinAbs(-0.325, 1e-15));
  CHECK(annealed_max(0.5, 0.1) == 0.0);
  CHECK_THROWS_AS(annealed_rate(1.5, 0.1), std::domain_error);
}
