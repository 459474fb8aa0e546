#include "malign/gibbs_gaussian.hpp"

#include <algorithm>
#include <stdexcept>

#include "malign/metrics.hpp"

namespace malign {

double beta_of(double rho, std::size_t p) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("beta_of: rho must lie in (0,1); the temperature is degenerate at 0 and 1");
  }
  if (p < 2) throw std::invalid_argument("beta_of: p must be >= 2");
  const double dp = static_cast<double>(p);
  return rho / (2.0 * (1.0 - rho) * (1.0 + (dp - 1.0) * rho));
}

namespace {

void check_dims(const GaussianObservation& observed, const Alignment& sigma, const char* what) {
  if (sigma.n() != observed.n || sigma.p() != observed.p || observed.weights.size() != observed.p) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

double hamiltonian(const GaussianObservation& observed, const Alignment& sigma) {
  check_dims(observed, sigma, "hamiltonian");
  const EdgeIndex edges(observed.n);
  const std::size_t p = observed.p;
  std::vector<std::vector<double>> w(p, std::vector<double>(edges.size()));
  for (std::size_t i = 0; i < p; ++i) {
    for (EdgeId e = 0; e < edges.size(); ++e) w[i][e] = observed.weights[i][edges.act(sigma[i], e)];
  }
  double h = 0.0;
  for (EdgeId e = 0; e < edges.size(); ++e) {
    double sum = 0.0, squares = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      sum += w[i][e];
      squares += w[i][e] * w[i][e];
    }
    h -= sum * sum - squares;
  }
  return h;
}

double hamiltonian_latent(const GaussianSample& sample, const Alignment& sigma) {
  require_same_shape(sigma, sample.truth, "hamiltonian_latent");
  const EdgeIndex edges(sigma.n());
  const std::size_t p = sigma.p();
  double h = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const Permutation rel = relative_permutation(sigma, sample.truth, i, j);
      for (EdgeId e = 0; e < edges.size(); ++e) h -= sample.latent[i][e] * sample.latent[j][edges.act(rel, e)];
    }
  }
  return h;
}

GaussianEnergyReport potential_split(const GaussianSample& sample, const Alignment& sigma) {
  require_same_shape(sigma, sample.truth, "potential_split");
  const EdgeIndex edges(sigma.n());
  const std::size_t p = sigma.p();
  GaussianEnergyReport r;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const Permutation rel = relative_permutation(sigma, sample.truth, i, j);
      for (EdgeId e = 0; e < edges.size(); ++e) {
        const EdgeId moved = edges.act(rel, e);
        if (moved == e) continue;
        r.v_diag -= sample.latent[i][e] * sample.latent[j][e];
        r.v_off -= sample.latent[i][e] * sample.latent[j][moved];
      }
    }
  }
  r.potential = -r.v_diag + r.v_off;
  r.hamiltonian = hamiltonian(sample.observed, sigma);
  const double rho = sample.params.rho;
  if (rho > 0.0 && rho < 1.0) r.beta = beta_of(rho, p);
  return r;
}

PosteriorTable gaussian_posterior_table(const GaussianObservation& observed, double rho,
                                        const std::optional<Alignment>& truth, std::uint64_t cap,
                                        std::size_t threads) {
  const double beta = beta_of(rho, observed.p);
  double offset = 0.0;
  if (truth) offset = hamiltonian(observed, *truth);
  return build_posterior_table(
      observed.n, observed.p,
      [&](const Alignment& sigma) { return -beta * (hamiltonian(observed, sigma) - offset); },
      truth.has_value(), cap, threads);
}

double annealed_rate(double alpha, double eta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("annealed_rate: alpha must lie in [0,1]");
  return (1.0 + eta) * alpha * alpha - (1.0 + 2.0 * eta) * alpha;
}

double annealed_max(double r, double eta) { return std::max(0.0, annealed_rate(r, eta)); }

}  // namespace malign
