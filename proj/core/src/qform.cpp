#include "malign/qform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace malign {

namespace {

using Matrix = Eigen::MatrixXd;

Matrix to_matrix(const std::vector<double>& data, std::size_t dim) {
  Matrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = data[r * dim + c];
  }
  return out;
}

// K = Lᵀ M L for Σ = L Lᵀ: symmetric, with the spectrum of ΣM.
Matrix whitened(const QformSpec& spec) {
  spec.validate();
  const Matrix sigma = to_matrix(spec.sigma, spec.dim);
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("QformSpec: sigma is not positive definite");
  const Matrix l = llt.matrixL();
  const Matrix k = l.transpose() * to_matrix(spec.m, spec.dim) * l;
  return (k + k.transpose()) / 2.0;
}

}  // namespace

void QformSpec::validate() const {
  if (dim == 0) throw std::invalid_argument("QformSpec: dimension must be positive");
  if (sigma.size() != dim * dim || m.size() != dim * dim) throw std::invalid_argument("QformSpec: matrix size mismatch");
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (sigma[r * dim + c] != sigma[c * dim + r]) throw std::invalid_argument("QformSpec: sigma must be symmetric");
      if (m[r * dim + c] != m[c * dim + r]) throw std::invalid_argument("QformSpec: m must be symmetric");
    }
  }
}

QformSpec random_qform_spec(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim), b(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = normal(rng);
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) b(r, c) = normal(rng);
  }
  const Matrix sigma = a * a.transpose() / static_cast<double>(dim) + 0.5 * Matrix::Identity(dim, dim);
  QformSpec spec{dim, std::vector<double>(dim * dim), std::vector<double>(dim * dim)};
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t lo = std::min(r, c), hi = std::max(r, c);
      spec.sigma[r * dim + c] = sigma(lo, hi);
      spec.m[r * dim + c] = (b(lo, hi) + b(hi, lo)) / 2.0;
    }
  }
  return spec;
}

double qform_spectral_radius(const QformSpec& spec) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(whitened(spec), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double qform_log_mgf(const QformSpec& spec, double t) {
  const Matrix k = whitened(spec);
  const Matrix a = Matrix::Identity(spec.dim, spec.dim) - 2.0 * t * k;
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("qform_log_mgf: I - 2t*Sigma*M is not positive definite at this t");
  }
  const Matrix l = llt.matrixL();
  double log_det = 0.0;
  for (std::size_t i = 0; i < spec.dim; ++i) log_det += 2.0 * std::log(l(i, i));
  return -0.5 * log_det;
}

double qform_log_mgf_series(const QformSpec& spec, double t, std::size_t terms) {
  const Matrix k = whitened(spec);
  Matrix power = Matrix::Identity(spec.dim, spec.dim);
  double sum = 0.0;
  for (std::size_t j = 1; j <= terms; ++j) {
    power = power * k;
    const double dj = static_cast<double>(j);
    sum += std::pow(2.0, dj - 1.0) * power.trace() * std::pow(t, dj) / dj;
  }
  return sum;
}

QformMcCheck qform_mc_check(const QformSpec& spec, double t, std::uint64_t samples, std::uint64_t seed,
                            double margin) {
  if (samples < 2) throw std::invalid_argument("qform_mc_check: need at least two samples");
  const Matrix k = whitened(spec);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lambda = eig.eigenvalues();
  if (2.0 * std::abs(t) * lambda.cwiseAbs().maxCoeff() > margin) {
    throw std::domain_error("qform_mc_check: 2t times the spectral radius exceeds the margin");
  }

  QformMcCheck r;
  r.analytic = qform_log_mgf(spec, t);
  Rng rng = seeded_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Q = Σ λ_k w_k² in the eigenbasis of K; accumulate e^{tQ} and its square.
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double q = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      const double w = normal(rng);
      q += lambda(i) * w * w;
    }
    const double y = std::exp(t * q);
    sum += y;
    sum_sq += y * y;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
  r.mc_estimate = std::log(mean);
  r.std_error = std::sqrt(variance / count) / mean;
  r.ok = std::abs(r.analytic - r.mc_estimate) <= 3.0 * r.std_error;
  if (t == 0.0) r.ok = r.analytic == 0.0 && r.mc_estimate == 0.0;
  return r;
}

double gaussian_tail_bound(double trace2, double opnorm, double c) {
  if (!(trace2 > 0.0 && opnorm > 0.0 && c > 0.0)) throw std::invalid_argument("gaussian_tail_bound: arguments must be positive");
  return std::exp(-c * c / (4.0 * (trace2 + c * opnorm)));
}

double sharp_tail(double trace2, double c) {
  if (!(trace2 > 0.0 && c > 0.0)) throw std::invalid_argument("sharp_tail: arguments must be positive");
  return std::sqrt(trace2) / (std::sqrt(std::numbers::pi) * c) * std::exp(-c * c / (4.0 * trace2));
}

}  // namespace malign
