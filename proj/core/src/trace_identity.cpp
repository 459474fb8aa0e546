#include "malign/trace_identity.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "malign/edge_index.hpp"
#include "malign/metrics.hpp"

namespace malign {

TraceIdentityCheck trace_identity_check(const Alignment& sigma, const Alignment& truth, std::size_t max_n) {
  require_same_shape(sigma, truth, "trace_identity_check");
  if (sigma.n() > max_n) throw StateSpaceTooLarge("trace_identity_check: n exceeds the matrix size cap");
  const std::size_t p = sigma.p();
  const EdgeIndex edges(sigma.n());
  const auto m = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m * static_cast<Eigen::Index>(p), m * static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const Permutation rel = relative_permutation(sigma, truth, i, j);
      for (EdgeId e = 0; e < edges.size(); ++e) {
        const EdgeId target = edges.act(rel, e);
        if (target != e) mat(static_cast<Eigen::Index>(i) * m + e, static_cast<Eigen::Index>(j) * m + target) = 1.0;
      }
    }
  }
  TraceIdentityCheck r;
  r.lhs = static_cast<std::int64_t>(std::llround((mat * mat).trace()));
  const CountMatrix fixed = edge_fixed_points(sigma, truth);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) r.rhs += static_cast<std::int64_t>(edges.size()) - fixed(i, j);
    }
  }
  r.ok = r.lhs == r.rhs;
  return r;
}

}  // namespace malign
