#include "malign/models.hpp"

#include <cmath>
#include <stdexcept>

namespace malign {

std::size_t EdgeSet::count() const {
  std::size_t c = 0;
  for (bool b : bits_) c += b;
  return c;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e]) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  if (other.capacity() != capacity()) return false;
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e] && !other.bits_[e]) return false;
  }
  return true;
}

void GaussianParams::validate() const {
  if (n < 2) throw std::invalid_argument("GaussianParams: n must be >= 2");
  if (p < 2) throw std::invalid_argument("GaussianParams: p must be >= 2");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("GaussianParams: rho must lie in [0,1]");
}

void ErParams::validate() const {
  if (n < 2) throw std::invalid_argument("ErParams: n must be >= 2");
  if (p < 2) throw std::invalid_argument("ErParams: p must be >= 2");
  if (!(lambda > 0.0)) throw std::invalid_argument("ErParams: lambda must be > 0");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("ErParams: s must lie in (0,1)");
  if (lambda > static_cast<double>(n)) throw std::invalid_argument("ErParams: lambda/n must be <= 1");
}

Alignment random_alignment(std::size_t n, std::size_t p, Rng& rng) {
  std::vector<Permutation> perms{Permutation::identity(n)};
  for (std::size_t i = 1; i < p; ++i) perms.push_back(random_permutation(n, rng));
  return Alignment(std::move(perms));
}

GaussianObservation scramble(const WeightTable& latent, const Alignment& truth) {
  const EdgeIndex edges(truth.n());
  GaussianObservation obs{truth.n(), truth.p(), WeightTable(truth.p(), std::vector<double>(edges.size()))};
  if (latent.size() != truth.p()) throw std::invalid_argument("scramble: graph count mismatch");
  for (std::size_t i = 0; i < truth.p(); ++i) {
    if (latent[i].size() != edges.size()) throw std::invalid_argument("scramble: edge count mismatch");
    // observed at e is latent at π⁻¹(e), i.e. latent at f lands on π(f).
    for (EdgeId f = 0; f < edges.size(); ++f) obs.weights[i][edges.act(truth[i], f)] = latent[i][f];
  }
  return obs;
}

ErObservation scramble(const std::vector<EdgeSet>& latent, const Alignment& truth) {
  const EdgeIndex edges(truth.n());
  if (latent.size() != truth.p()) throw std::invalid_argument("scramble: graph count mismatch");
  ErObservation obs{truth.n(), truth.p(), std::vector<EdgeSet>(truth.p(), EdgeSet(edges.size()))};
  for (std::size_t i = 0; i < truth.p(); ++i) {
    // e observed ⇔ π(e) latent.
    for (EdgeId e = 0; e < edges.size(); ++e) {
      if (latent[i].contains(edges.act(truth[i], e))) obs.graphs[i].insert(e);
    }
  }
  return obs;
}

GaussianSample sample_gaussian(const GaussianParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng = seeded_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const EdgeIndex edges(params.n);
  const double shared = std::sqrt(params.rho);
  const double own = std::sqrt(1.0 - params.rho);

  GaussianSample sample;
  sample.params = params;
  sample.latent.assign(params.p, std::vector<double>(edges.size()));
  for (EdgeId e = 0; e < edges.size(); ++e) {
    const double common = normal(rng);
    for (std::size_t i = 0; i < params.p; ++i) sample.latent[i][e] = shared * common + own * normal(rng);
  }
  sample.truth = random_alignment(params.n, params.p, rng);
  sample.observed = scramble(sample.latent, sample.truth);
  return sample;
}

ErSample sample_er(const ErParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng = seeded_rng(seed);
  std::bernoulli_distribution in_master(params.edge_probability());
  std::bernoulli_distribution keep(params.s);
  const EdgeIndex edges(params.n);

  ErSample sample;
  sample.params = params;
  sample.master = EdgeSet(edges.size());
  sample.children.assign(params.p, EdgeSet(edges.size()));
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!in_master(rng)) continue;
    sample.master.insert(e);
    for (auto& child : sample.children) {
      if (keep(rng)) child.insert(e);
    }
  }
  sample.truth = random_alignment(params.n, params.p, rng);
  sample.observed = scramble(sample.children, sample.truth);
  return sample;
}

EdgeSet intersection_union_graph(const ErObservation& observed, const Alignment& aligned_by) {
  if (aligned_by.n() != observed.n || aligned_by.p() != observed.p) {
    throw std::invalid_argument("intersection_union_graph: dimension mismatch");
  }
  const EdgeIndex edges(observed.n);
  std::vector<Permutation> inverses;
  for (std::size_t i = 0; i < observed.p; ++i) inverses.push_back(inverse(aligned_by[i]));
  EdgeSet out(edges.size());
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!observed.graphs[0].contains(edges.act(inverses[0], e))) continue;
    for (std::size_t i = 1; i < observed.p; ++i) {
      // e ∈ π_i(𝒢^(i)) ⇔ π_i⁻¹(e) ∈ 𝒢^(i)
      if (observed.graphs[i].contains(edges.act(inverses[i], e))) {
        out.insert(e);
        break;
      }
    }
  }
  return out;
}

}  // namespace malign
