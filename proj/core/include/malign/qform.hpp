#pragma once

#include <cstdint>
#include <vector>

#include "malign/rng.hpp"

namespace malign {

/// Q = Xᵀ M X with X ~ N(0, Σ). Matrices are dense, row-major, dim × dim.
struct QformSpec {
  std::size_t dim = 0;
  std::vector<double> sigma;  // symmetric positive definite
  std::vector<double> m;      // symmetric

  void validate() const;
};

/// Random well-conditioned Σ = AAᵀ/N + I/2 and symmetric M with N(0,1) entries.
QformSpec random_qform_spec(std::size_t dim, Rng& rng);

/// max |eigenvalue| of ΣM.
double qform_spectral_radius(const QformSpec& spec);

/// log E[e^{tQ}] = −½ log det(I − 2tΣM). Throws std::domain_error when
/// I − 2tΣM is not positive definite.
double qform_log_mgf(const QformSpec& spec, double t);

/// Σ_{k=1}^{terms} 2^{k−1} Tr((ΣM)^k) t^k / k.
double qform_log_mgf_series(const QformSpec& spec, double t, std::size_t terms);

struct QformMcCheck {
  double analytic = 0;
  double mc_estimate = 0;
  double std_error = 0;
  bool ok = false;
};

/// Monte-Carlo log E[e^{tQ}] with a delta-method standard error; ok iff the
/// gap is within 3 standard errors. Requires 2t·ρ(ΣM) ≤ margin.
QformMcCheck qform_mc_check(const QformSpec& spec, double t, std::uint64_t samples, std::uint64_t seed,
                            double margin = 0.8);

/// exp(−c² / (4(trace2 + c·opnorm))).
double gaussian_tail_bound(double trace2, double opnorm, double c);
/// √T/(√π c) · exp(−c²/(4T)).
double sharp_tail(double trace2, double c);

}  // namespace malign
