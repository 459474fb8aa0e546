#pragma once

#include <cstdint>

#include "malign/alignment.hpp"

namespace malign {

struct TraceIdentityCheck {
  std::int64_t lhs = 0;  // Tr(M_σ²), from the materialized matrix
  std::int64_t rhs = 0;  // Σ_{i≠j} (C(n,2) − D_ij)
  bool ok = false;
};

/// Builds M_σ with (M)_{(e,i),(e',j)} = 1[e' = σ_ij(e), e ≠ e', i ≠ j] and
/// compares Tr(M²) with the edge fixed-point formula. n ≤ max_n.
TraceIdentityCheck trace_identity_check(const Alignment& sigma, const Alignment& truth, std::size_t max_n = 12);

}  // namespace malign
