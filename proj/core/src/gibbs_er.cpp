#include "malign/gibbs_er.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "malign/graph.hpp"

namespace malign {

std::int64_t TypeCounts::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::vector<std::uint32_t> edge_masks(const ErObservation& observed, const Alignment& pi) {
  if (pi.n() != observed.n || pi.p() != observed.p || observed.graphs.size() != observed.p) {
    throw std::invalid_argument("type_counts: dimension mismatch");
  }
  if (observed.p > 20) throw std::invalid_argument("type_counts: p too large for bitmask types");
  const EdgeIndex edges(observed.n);
  std::vector<Permutation> inverses;
  for (std::size_t i = 0; i < observed.p; ++i) inverses.push_back(inverse(pi[i]));
  std::vector<std::uint32_t> masks(edges.size(), 0);
  for (EdgeId e = 0; e < edges.size(); ++e) {
    for (std::size_t i = 0; i < observed.p; ++i) {
      if (observed.graphs[i].contains(edges.act(inverses[i], e))) masks[e] |= 1u << i;
    }
  }
  return masks;
}

TypeCounts type_counts(const ErObservation& observed, const Alignment& pi) {
  TypeCounts t{observed.p, std::vector<std::int64_t>(std::size_t{1} << observed.p, 0)};
  for (auto m : edge_masks(observed, pi)) ++t.counts[m];
  return t;
}

double er_absent_probability(const ErParams& params) {
  const double dp = static_cast<double>(params.p);
  return 1.0 - params.lambda * (1.0 - std::pow(1.0 - params.s, dp)) / static_cast<double>(params.n);
}

void check_er_regime(const ErParams& params) {
  params.validate();
  if (params.n < 3) throw std::domain_error("ER posterior: n must be >= 3 (log n is the inverse temperature)");
  const double a = er_absent_probability(params);
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("ER posterior: absent-edge probability must lie in (0,1)");
}

namespace {

// log(q_X / a) with q_X = λ s^k (1−s)^{p−k} / n.
std::vector<double> type_log_ratios(const ErParams& params) {
  const double a = er_absent_probability(params);
  const double log_n = std::log(static_cast<double>(params.n));
  std::vector<double> out(params.p + 1, 0.0);
  for (std::size_t k = 1; k <= params.p; ++k) {
    const double dk = static_cast<double>(k);
    const double rest = static_cast<double>(params.p - k);
    out[k] = std::log(params.lambda) + dk * std::log(params.s) + rest * std::log1p(-params.s) - log_n -
             std::log(a);
  }
  return out;
}

}  // namespace

std::vector<double> er_type_energies(const ErParams& params) {
  check_er_regime(params);
  const double log_n = std::log(static_cast<double>(params.n));
  const auto ratios = type_log_ratios(params);
  std::vector<double> out(std::size_t{1} << params.p, 0.0);
  for (std::uint32_t mask = 1; mask < out.size(); ++mask) {
    out[mask] = -ratios[static_cast<std::size_t>(std::popcount(mask))] / log_n;
  }
  return out;
}

ErEnergyReport er_log_posterior(const ErObservation& observed, const Alignment& pi, const ErParams& params) {
  check_er_regime(params);
  if (params.n != observed.n || params.p != observed.p) {
    throw std::invalid_argument("er_log_posterior: parameters do not match the observation");
  }
  const auto ratios = type_log_ratios(params);
  const TypeCounts t = type_counts(observed, pi);
  ErEnergyReport r;
  for (std::uint32_t mask = 1; mask < t.counts.size(); ++mask) {
    r.log_posterior_unnormalized +=
        static_cast<double>(t.counts[mask]) * ratios[static_cast<std::size_t>(std::popcount(mask))];
  }
  r.edge_total = t.present();
  r.hamiltonian_exact = -r.log_posterior_unnormalized / std::log(static_cast<double>(params.n));
  return r;
}

PosteriorTable er_posterior_table(const ErObservation& observed, const ErParams& params, std::uint64_t cap,
                                  std::size_t threads) {
  check_er_regime(params);
  return build_posterior_table(
      observed.n, observed.p,
      [&](const Alignment& pi) { return er_log_posterior(observed, pi, params).log_posterior_unnormalized; },
      false, cap, threads);
}

MonotonicityCheck check_automorphism_monotonicity(const ErObservation& observed, const Alignment& pi,
                                                  const Permutation& sigma) {
  if (sigma.size() != observed.n) throw std::invalid_argument("check_automorphism_monotonicity: size mismatch");
  const EdgeSet h = intersection_union_graph(observed, pi);
  if (!is_automorphism(h, sigma)) {
    throw NotAnAutomorphism("check_automorphism_monotonicity: sigma is not an automorphism of the intersection graph");
  }
  MonotonicityCheck c;
  c.before = type_counts(observed, pi).present();
  c.after = type_counts(observed, left_compose_tail(sigma, pi)).present();
  c.ok = c.after <= c.before;
  return c;
}

}  // namespace malign
