#pragma once

#include <cstdint>
#include <vector>

#include "malign/alignment.hpp"
#include "malign/edge_index.hpp"
#include "malign/rng.hpp"

namespace malign {

/// Membership bitset over the canonical edge ids of K_n.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t edge_count) : bits_(edge_count, false) {}

  std::size_t capacity() const { return bits_.size(); }
  bool contains(EdgeId e) const { return bits_[e]; }
  void insert(EdgeId e) { bits_[e] = true; }
  void erase(EdgeId e) { bits_[e] = false; }
  std::size_t count() const;
  std::vector<EdgeId> ids() const;

  bool is_subset_of(const EdgeSet& other) const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Per-graph edge weights, indexed [graph][edge id].
using WeightTable = std::vector<std::vector<double>>;

struct GaussianParams {
  std::size_t n = 0;
  std::size_t p = 2;
  double rho = 0.0;

  void validate() const;
};

struct ErParams {
  std::size_t n = 0;
  std::size_t p = 2;
  double lambda = 1.0;
  double s = 0.5;

  void validate() const;
  double edge_probability() const { return lambda / static_cast<double>(n); }
};

/// What the statistician sees in the Gaussian model: scrambled weights only.
struct GaussianObservation {
  std::size_t n = 0;
  std::size_t p = 0;
  WeightTable weights;  // observed[i][e]
};

/// What the statistician sees in the ER model: scrambled edge sets only.
struct ErObservation {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<EdgeSet> graphs;  // observed 𝒢^(i)
};

struct GaussianSample {
  GaussianParams params;
  WeightTable latent;  // G^(i)_e
  Alignment truth;
  GaussianObservation observed;  // observed[i][e] = latent[i][π_i*⁻¹(e)]
};

struct ErSample {
  ErParams params;
  EdgeSet master;
  std::vector<EdgeSet> children;  // latent G^(i) ⊆ master
  Alignment truth;
  ErObservation observed;  // e ∈ observed[i] ⇔ π_i*(e) ∈ children[i]
};

/// Correlated Gaussian weights, G_e^(i) = √ρ Z_e + √(1−ρ) Z_e^(i).
GaussianSample sample_gaussian(const GaussianParams& params, std::uint64_t seed);

/// Master graph G(n, λ/n); children keep each master edge independently w.p. s.
ErSample sample_er(const ErParams& params, std::uint64_t seed);

/// Scrambles latent data by an alignment (the observation map).
GaussianObservation scramble(const WeightTable& latent, const Alignment& truth);
ErObservation scramble(const std::vector<EdgeSet>& latent, const Alignment& truth);

/// 𝒢^(1) ∩ ⋃_{i≥2} π_i(𝒢^(i)).
EdgeSet intersection_union_graph(const ErObservation& observed, const Alignment& aligned_by);
inline EdgeSet intersection_union_graph(const ErSample& sample, const Alignment& aligned_by) {
  return intersection_union_graph(sample.observed, aligned_by);
}

/// Uniform alignment: π_1 = Id, π_2..π_p i.i.d. uniform.
Alignment random_alignment(std::size_t n, std::size_t p, Rng& rng);

}  // namespace malign
