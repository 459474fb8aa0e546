#pragma once

#include <cstdint>
#include <optional>

#include "malign/alignment.hpp"
#include "malign/models.hpp"
#include "malign/posterior.hpp"

namespace malign {

/// Inverse temperature ρ / (2(1−ρ)(1+(p−1)ρ)). Requires 0 < ρ < 1.
double beta_of(double rho, std::size_t p);

/// ℋ(σ) = −Σ_e Σ_{i≠j} W^(i)_e W^(j)_e with W^(i)_e = observed[i][σ_i(e)].
/// Uses observations only.
double hamiltonian(const GaussianObservation& observed, const Alignment& sigma);

/// −Σ_e Σ_{i≠j} G^(i)_e G^(j)_{σ_ij(e)} on the latent weights; needs the truth.
double hamiltonian_latent(const GaussianSample& sample, const Alignment& sigma);

struct GaussianEnergyReport {
  double hamiltonian = 0;
  double potential = 0;  // ℋ(σ) − ℋ(π*)
  double v_diag = 0;     // −Σ_{σ_ij e ≠ e} G^(i)_e G^(j)_e
  double v_off = 0;      // −Σ_{σ_ij e ≠ e} G^(i)_e G^(j)_{σ_ij e}
  double beta = 0;
};

/// Truth-relative energy split; potential = −v_diag + v_off. beta is left at 0
/// when ρ is 0 or 1.
GaussianEnergyReport potential_split(const GaussianSample& sample, const Alignment& sigma);

/// Exhaustive table of −βℋ(σ). With a truth, weights are rebased to −βV(σ) so
/// that log Z ≥ 0.
PosteriorTable gaussian_posterior_table(const GaussianObservation& observed, double rho,
                                        const std::optional<Alignment>& truth = std::nullopt,
                                        std::uint64_t cap = kDefaultEnumerationCap,
                                        std::size_t threads = 1);

/// φ(α) = (1+η)α² − (1+2η)α for α ∈ [0,1].
double annealed_rate(double alpha, double eta);
/// max_{α∈[0,r]} φ(α) = max(0, φ(r)) by convexity.
double annealed_max(double r, double eta);

}  // namespace malign
