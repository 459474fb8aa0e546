#include <catch_amalgamated.hpp>

#include <cmath>

#include "malign/edge_index.hpp"
#include "malign/models.hpp"
#include "malign/rng.hpp"

using namespace malign;

TEST_CASE("parameter validation", "[models]") {
  CHECK_THROWS_AS((ErParams{10, 2, 2.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ErParams{10, 2, 2.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ErParams{3, 2, 4.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GaussianParams{5, 2, 1.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GaussianParams{5, 1, 0.5}.validate()), std::invalid_argument);
  CHECK_NOTHROW(GaussianParams{5, 2, 1.0}.validate());
}

TEST_CASE("gaussian truth has identity first coordinate and scrambles consistently", "[models]") {
  const GaussianSample s = sample_gaussian({6, 3, 0.4}, 9);
  CHECK(s.truth[0].is_identity());
  const EdgeIndex edges(6);
  for (std::size_t i = 0; i < 3; ++i) {
    const Permutation inv = inverse(s.truth[i]);
    for (EdgeId e = 0; e < edges.size(); ++e) CHECK(s.observed.weights[i][e] == s.latent[i][edges.act(inv, e)]);
  }
  CHECK(scramble(s.latent, s.truth).weights == s.observed.weights);
}

TEST_CASE("gaussian with rho = 1 copies the weights", "[models]") {
  const GaussianSample s = sample_gaussian({7, 3, 1.0}, 3);
  for (std::size_t e = 0; e < s.latent[0].size(); ++e) {
    CHECK(s.latent[1][e] == s.latent[0][e]);
    CHECK(s.latent[2][e] == s.latent[0][e]);
  }
}

TEST_CASE("gaussian covariance matches the model", "[models][slow]") {
  // 20000 samples of C(11,2) = 55 edges: 1.1e6 edge vectors.
  const std::size_t p = 3;
  double sum[3] = {}, cross[3][3] = {};
  std::size_t count = 0;
  for (std::uint64_t k = 0; k < 20000; ++k) {
    const GaussianSample s = sample_gaussian({11, p, 0.6}, derive_seed(77, k));
    for (std::size_t e = 0; e < s.latent[0].size(); ++e) {
      for (std::size_t i = 0; i < p; ++i) {
        sum[i] += s.latent[i][e];
        for (std::size_t j = 0; j < p; ++j) cross[i][j] += s.latent[i][e] * s.latent[j][e];
      }
      ++count;
    }
  }
  const double c = static_cast<double>(count);
  for (std::size_t i = 0; i < p; ++i) {
    CHECK(std::abs(sum[i] / c) < 4.0 / std::sqrt(c));
    for (std::size_t j = 0; j < p; ++j) {
      const double expected = i == j ? 1.0 : 0.6;
      CHECK(std::abs(cross[i][j] / c - expected) < 0.01);
    }
  }
}

TEST_CASE("gaussian with rho = 0 has no cross-covariance", "[models][slow]") {
  double cross = 0;
  std::size_t count = 0;
  for (std::uint64_t k = 0; k < 22000; ++k) {
    const GaussianSample s = sample_gaussian({11, 2, 0.0}, derive_seed(78, k));
    for (std::size_t e = 0; e < s.latent[0].size(); ++e, ++count) cross += s.latent[0][e] * s.latent[1][e];
  }
  const double c = static_cast<double>(count);
  CHECK(std::abs(cross / c) < 4.0 / std::sqrt(c));
}

TEST_CASE("ER children are subgraphs of the master and scramble consistently", "[models]") {
  const ErSample s = sample_er({30, 3, 3.0, 0.6}, 5);
  const EdgeIndex edges(30);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.children[i].is_subset_of(s.master));
    for (EdgeId e = 0; e < edges.size(); ++e) {
      CHECK(s.observed.graphs[i].contains(e) == s.children[i].contains(edges.act(s.truth[i], e)));
    }
  }
  CHECK(scramble(s.children, s.truth).graphs == s.observed.graphs);
}

TEST_CASE("ER master edge count has the binomial mean", "[models][slow]") {
  const std::size_t trials = 10000;
  const ErParams params{100, 2, 3.0, 0.5};
  const double q = 3.0 / 100.0;
  const double m = static_cast<double>(choose2(100));
  double total = 0;
  for (std::size_t k = 0; k < trials; ++k) total += static_cast<double>(sample_er(params, derive_seed(1, k)).master.count());
  const double mean = total / static_cast<double>(trials);
  const double se = std::sqrt(m * q * (1 - q) / static_cast<double>(trials));
  CHECK(std::abs(mean - 148.5) < 4 * se);
}

TEST_CASE("ER per-edge pattern law", "[models][slow]") {
  // Edge in exactly k of p children with probability C(p,k)(λ/n)s^k(1−s)^{p−k}.
  const ErParams params{100, 3, 3.0, 0.5};
  const double q = 0.03, s = 0.5;
  std::size_t edges = 0;
  std::vector<double> hits(4, 0.0);
  for (std::uint64_t k = 0; edges < 1'000'000; ++k) {
    const ErSample smp = sample_er(params, derive_seed(2, k));
    for (EdgeId e = 0; e < smp.master.capacity(); ++e, ++edges) {
      int c = 0;
      for (const auto& child : smp.children) c += child.contains(e) ? 1 : 0;
      if (c > 0) hits[static_cast<std::size_t>(c)] += 1;
    }
  }
  const double total = static_cast<double>(edges);
  const double binom[4] = {1, 3, 3, 1};
  for (int k = 1; k <= 3; ++k) {
    const double prob = binom[k] * q * std::pow(s, k) * std::pow(1 - s, 3 - k);
    const double se = std::sqrt(prob * (1 - prob) / total);
    CHECK(std::abs(hits[static_cast<std::size_t>(k)] / total - prob) < 4 * se);
  }
}

TEST_CASE("ER child indicators are independent given the master", "[models][slow]") {
  // Conditional on a master edge, the 2^p child patterns are i.i.d. Bernoulli(s) products.
  const ErParams params{60, 3, 6.0, 0.3};
  std::vector<double> cells(8, 0.0);
  double master_edges = 0;
  for (std::uint64_t k = 0; master_edges < 200000; ++k) {
    const ErSample smp = sample_er(params, derive_seed(3, k));
    for (EdgeId e : smp.master.ids()) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < 3; ++i) mask |= smp.children[i].contains(e) ? (1u << i) : 0u;
      cells[mask] += 1;
      master_edges += 1;
    }
  }
  double chi2 = 0;
  for (std::size_t mask = 0; mask < 8; ++mask) {
    const int k = __builtin_popcount(static_cast<unsigned>(mask));
    const double expected = master_edges * std::pow(0.3, k) * std::pow(0.7, 3 - k);
    chi2 += (cells[mask] - expected) * (cells[mask] - expected) / expected;
  }
  // 7 degrees of freedom; 0.999 quantile is 24.32.
  CHECK(chi2 < 24.32);
}

TEST_CASE("intersection-union graph", "[models]") {
  ErSample s = sample_er({20, 3, 4.0, 0.7}, 8);
  Rng rng = seeded_rng(4);
  const Alignment pi = random_alignment(20, 3, rng);
  const EdgeSet h = intersection_union_graph(s, pi);
  CHECK(h.is_subset_of(s.observed.graphs[0]));

  for (auto& g : s.observed.graphs) g = EdgeSet(g.capacity());
  CHECK(intersection_union_graph(s, pi).count() == 0);
}

TEST_CASE("intersection-union graph at the truth has the threshold edge density", "[models][slow]") {
  // Expected edge count C(n,2)·λs(1−(1−s)^{p−1})/n = 4950·1.125/100.
  const ErParams params{100, 3, 3.0, 0.5};
  const std::size_t trials = 10000;
  double total = 0, squares = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const ErSample s = sample_er(params, derive_seed(4, k));
    const double c = static_cast<double>(intersection_union_graph(s, s.truth).count());
    total += c;
    squares += c * c;
  }
  const double mean = total / static_cast<double>(trials);
  const double var = squares / static_cast<double>(trials) - mean * mean;
  CHECK(std::abs(mean - 4950.0 * 1.125 / 100.0) < 4 * std::sqrt(var / static_cast<double>(trials)));
}
