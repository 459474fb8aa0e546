#include <cmath>
#include <limits>
#include <stdexcept>

#include "malign/edge_index.hpp"
#include "malign/estimators.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/rng.hpp"

namespace malign {

void AnnealSchedule::validate() const {
  if (!(t0 >= 0.0)) throw std::invalid_argument("AnnealSchedule: t0 must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("AnnealSchedule: gamma must lie in (0,1) so the temperature decreases");
  }
  if (moves_per_temperature == 0) throw std::invalid_argument("AnnealSchedule: moves_per_temperature must be >= 1");
  if (check_every == 0) throw std::invalid_argument("AnnealSchedule: check_every must be >= 1");
}

namespace {

// Search over per-coordinate permutations s_i with values[e][i] = base[i][s_i(e)]
// and energy Σ_e edge_energy(values[e][0..p)). A transposition (u v) on
// coordinate i right-composes s_i, which swaps values on {u,x} and {v,x}.
template <class EdgeEnergy>
class Annealer {
 public:
  Annealer(std::size_t n, std::size_t p, const std::vector<std::vector<double>>& base, EdgeEnergy edge_energy)
      : n_(n), p_(p), edges_(n), base_(base), edge_energy_(edge_energy) {}

  struct Outcome {
    std::vector<Permutation> states;
    double energy = 0;
    std::uint64_t moves = 0;
  };

  Outcome run(const AnnealSchedule& schedule, double t0, std::uint64_t seed) {
    Rng rng = seeded_rng(seed);
    states_.assign(p_, {});
    states_[0].resize(n_);
    for (Vertex x = 0; x < n_; ++x) states_[0][x] = x;
    for (std::size_t i = 1; i < p_; ++i) {
      const Permutation s = random_permutation(n_, rng);
      states_[i].assign(s.images().begin(), s.images().end());
    }
    rebuild();
    double energy = total_energy();
    double best_energy = energy;
    auto best_states = states_;

    std::uniform_int_distribution<std::size_t> pick_vertex(0, n_ - 1);
    std::uniform_int_distribution<std::size_t> pick_coordinate(1, p_ >= 3 ? p_ : p_ - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> fresh(2 * n_);

    double temperature = t0;
    for (std::uint64_t m = 0; m < schedule.moves; ++m) {
      if (m > 0 && m % schedule.moves_per_temperature == 0) temperature *= schedule.gamma;
      const std::size_t u = pick_vertex(rng);
      std::size_t v = pick_vertex(rng);
      while (v == u) v = pick_vertex(rng);
      const std::size_t coord = pick_coordinate(rng);  // == p_ means every coordinate 1..p−1
      const std::size_t first = coord == p_ ? 1 : coord;
      const std::size_t last = coord == p_ ? p_ : coord + 1;

      double delta = 0.0;
      std::size_t k = 0;
      for (Vertex x = 0; x < n_; ++x) {
        if (x == u || x == v) continue;
        const EdgeId e1 = edges_.lookup(static_cast<Vertex>(u), x);
        const EdgeId e2 = edges_.lookup(static_cast<Vertex>(v), x);
        swap_values(e1, e2, first, last);
        fresh[k] = edge_energy_(&values_[e1 * p_]);
        fresh[k + 1] = edge_energy_(&values_[e2 * p_]);
        delta += fresh[k] + fresh[k + 1] - edge_h_[e1] - edge_h_[e2];
        k += 2;
      }

      const bool accept =
          delta <= 0.0 || (temperature > 0.0 && unit(rng) < std::exp(-delta / temperature));
      if (accept) {
        k = 0;
        for (Vertex x = 0; x < n_; ++x) {
          if (x == u || x == v) continue;
          edge_h_[edges_.lookup(static_cast<Vertex>(u), x)] = fresh[k];
          edge_h_[edges_.lookup(static_cast<Vertex>(v), x)] = fresh[k + 1];
          k += 2;
        }
        for (std::size_t i = first; i < last; ++i) std::swap(states_[i][u], states_[i][v]);
        energy += delta;
        if (energy < best_energy) {
          best_energy = energy;
          best_states = states_;
        }
      } else {
        for (Vertex x = 0; x < n_; ++x) {
          if (x == u || x == v) continue;
          swap_values(edges_.lookup(static_cast<Vertex>(u), x), edges_.lookup(static_cast<Vertex>(v), x), first,
                      last);
        }
      }

      if ((m + 1) % schedule.check_every == 0) {
        rebuild();
        const double exact = total_energy();
        if (std::abs(exact - energy) > schedule.check_tolerance * std::max(1.0, std::abs(exact))) {
          throw std::logic_error("anneal: incremental energy drifted from the recomputed value");
        }
        energy = exact;
      }
    }

    states_ = best_states;
    rebuild();
    Outcome out;
    out.energy = total_energy();
    out.moves = schedule.moves;
    for (auto& s : best_states) out.states.emplace_back(std::move(s));
    return out;
  }

 private:
  void swap_values(EdgeId e1, EdgeId e2, std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) std::swap(values_[e1 * p_ + i], values_[e2 * p_ + i]);
  }

  void rebuild() {
    const std::size_t m = edges_.size();
    values_.assign(m * p_, 0.0);
    edge_h_.assign(m, 0.0);
    for (EdgeId e = 0; e < m; ++e) {
      const Edge pair = edges_.pair(e);
      for (std::size_t i = 0; i < p_; ++i) {
        values_[e * p_ + i] = base_[i][edges_.lookup(states_[i][pair.u], states_[i][pair.v])];
      }
      edge_h_[e] = edge_energy_(&values_[e * p_]);
    }
  }

  double total_energy() const {
    double h = 0.0;
    for (double x : edge_h_) h += x;
    return h;
  }

  std::size_t n_;
  std::size_t p_;
  EdgeIndex edges_;
  const std::vector<std::vector<double>>& base_;
  EdgeEnergy edge_energy_;
  std::vector<std::vector<Vertex>> states_;
  std::vector<double> values_;
  std::vector<double> edge_h_;
};

void check_size(std::size_t n, std::size_t p, const AnnealSchedule& schedule) {
  schedule.validate();
  if (n < 2 || p < 2) throw std::invalid_argument("anneal: need n >= 2 and p >= 2");
  if (n > schedule.max_n) throw std::invalid_argument("anneal: n exceeds the annealing budget");
}

EstimatorResult gaussian_search(const GaussianObservation& observed, const AnnealSchedule& schedule, double t0,
                                std::uint64_t seed, EstimatorMethod method) {
  check_size(observed.n, observed.p, schedule);
  const std::size_t p = observed.p;
  auto energy = [p](const double* w) {
    double sum = 0.0, squares = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      sum += w[i];
      squares += w[i] * w[i];
    }
    return -(sum * sum - squares);
  };
  Annealer annealer(observed.n, p, observed.weights, energy);
  auto out = annealer.run(schedule, t0, seed);
  EstimatorResult r;
  r.estimate = Alignment(std::move(out.states));
  r.energy = hamiltonian(observed, r.estimate);
  r.score = -r.energy;
  r.method = method;
  r.iterations = out.moves;
  r.seed = seed;
  return r;
}

EstimatorResult er_search(const ErObservation& observed, const ErParams& params, const AnnealSchedule& schedule,
                          double t0, std::uint64_t seed, EstimatorMethod method) {
  check_size(observed.n, observed.p, schedule);
  if (params.n != observed.n || params.p != observed.p) {
    throw std::invalid_argument("anneal: parameters do not match the observation");
  }
  const std::size_t p = observed.p;
  const EdgeIndex edges(observed.n);
  std::vector<std::vector<double>> base(p, std::vector<double>(edges.size(), 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (EdgeId e = 0; e < edges.size(); ++e) base[i][e] = observed.graphs[i].contains(e) ? 1.0 : 0.0;
  }
  const std::vector<double> table = er_type_energies(params);
  auto energy = [p, &table](const double* present) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < p; ++i) mask |= (present[i] != 0.0 ? 1u : 0u) << i;
    return table[mask];
  };
  // The search state holds π_i⁻¹, so membership reads π_i⁻¹(e) ∈ 𝒢^(i).
  Annealer annealer(observed.n, p, base, energy);
  auto out = annealer.run(schedule, t0, seed);
  std::vector<Permutation> perms;
  for (const auto& s : out.states) perms.push_back(inverse(s));
  EstimatorResult r;
  r.estimate = Alignment(std::move(perms));
  r.energy = er_log_posterior(observed, r.estimate, params).hamiltonian_exact;
  r.score = -r.energy;
  r.method = method;
  r.iterations = out.moves;
  r.seed = seed;
  return r;
}

}  // namespace

EstimatorResult anneal(const GaussianObservation& observed, double rho, const AnnealSchedule& schedule,
                       std::uint64_t seed) {
  const double t0 = schedule.t0 > 0.0 ? schedule.t0 : 2.0 / beta_of(rho, observed.p);
  return gaussian_search(observed, schedule, t0, seed, EstimatorMethod::anneal);
}

EstimatorResult anneal(const ErObservation& observed, const ErParams& params, const AnnealSchedule& schedule,
                       std::uint64_t seed) {
  const double t0 = schedule.t0 > 0.0 ? schedule.t0 : 2.0 / std::log(static_cast<double>(params.n));
  return er_search(observed, params, schedule, t0, seed, EstimatorMethod::anneal);
}

EstimatorResult greedy(const GaussianObservation& observed, const AnnealSchedule& schedule, std::uint64_t seed) {
  return gaussian_search(observed, schedule, 0.0, seed, EstimatorMethod::greedy);
}

EstimatorResult greedy(const ErObservation& observed, const ErParams& params, const AnnealSchedule& schedule,
                       std::uint64_t seed) {
  return er_search(observed, params, schedule, 0.0, seed, EstimatorMethod::greedy);
}

}  // namespace malign
