#include "malign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "malign/edge_index.hpp"

namespace malign {

bool CountMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Metric parse_metric(std::string_view name) {
  if (name == "d") return Metric::d;
  if (name == "d_w") return Metric::d_w;
  if (name == "d_c") return Metric::d_c;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "' (expected d, d_w or d_c)");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::d: return "d";
    case Metric::d_w: return "d_w";
    case Metric::d_c: return "d_c";
  }
  return "?";
}

double overlap_pair(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap_pair: mismatched n");
  if (a.size() == 0) return 1.0;
  return static_cast<double>(agreement_count(a, b)) / static_cast<double>(a.size());
}

OverlapReport overlap_multi(const Alignment& a, const Alignment& b) {
  require_same_shape(a, b, "overlap_multi");
  const std::size_t n = a.n();
  const std::size_t p = a.p();

  OverlapReport r;
  r.n = static_cast<std::int64_t>(n);
  r.p = static_cast<std::int64_t>(p);

  for (Vertex x = 0; x < n; ++x) {
    bool all = true;
    for (std::size_t i = 1; i < p; ++i) all = all && a[i](x) == b[i](x);
    r.simultaneous_agreements += all;
  }
  for (std::size_t i = 1; i < p; ++i) {
    r.coordinate_agreements += static_cast<std::int64_t>(agreement_count(a[i], b[i]));
  }

  // ov(a_i⁻¹b_i, a_j⁻¹b_j) over ordered pairs i ≠ j, coordinate 1 included.
  std::vector<Permutation> rel;
  for (std::size_t i = 0; i < p; ++i) rel.push_back(compose(inverse(a[i]), b[i]));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const auto c = static_cast<std::int64_t>(agreement_count(rel[i], rel[j]));
      r.squared_pair_agreements += c * c;
    }
  }

  const double dn = static_cast<double>(n);
  const double dp = static_cast<double>(p);
  r.ov = static_cast<double>(r.simultaneous_agreements) / dn;
  r.ov_w = static_cast<double>(r.coordinate_agreements) / ((dp - 1.0) * dn);
  const double ov_c2 = static_cast<double>(r.squared_pair_agreements) / (dp * (dp - 1.0) * dn * dn);
  r.ov_c = std::sqrt(ov_c2);
  r.d = 1.0 - r.ov;
  r.d_w = 1.0 - r.ov_w;
  r.d_c = std::sqrt(std::max(0.0, 1.0 - ov_c2));
  return r;
}

bool within_distance(const OverlapReport& report, Metric metric, double r) {
  constexpr double kSlack = 1e-12;
  const double n = static_cast<double>(report.n);
  const double p = static_cast<double>(report.p);
  switch (metric) {
    case Metric::d:
      return static_cast<double>(report.n - report.simultaneous_agreements) <= r * n + kSlack * n;
    case Metric::d_w: {
      const double denom = (p - 1.0) * n;
      return denom - static_cast<double>(report.coordinate_agreements) <= r * denom + kSlack * denom;
    }
    case Metric::d_c: {
      const double denom = p * (p - 1.0) * n * n;
      return denom - static_cast<double>(report.squared_pair_agreements) <= r * r * denom + kSlack * denom;
    }
  }
  return false;
}

Permutation relative_permutation(const Alignment& sigma, const Alignment& truth, std::size_t i,
                                 std::size_t j) {
  return compose(compose(inverse(truth[j]), sigma[j]), compose(inverse(sigma[i]), truth[i]));
}

namespace {

std::vector<Permutation> all_relative(const Alignment& sigma, const Alignment& truth) {
  const std::size_t p = sigma.p();
  std::vector<Permutation> rel(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) rel[i * p + j] = relative_permutation(sigma, truth, i, j);
  }
  return rel;
}

std::int64_t fixed_edges(const Permutation& s, const EdgeIndex& edges) {
  std::int64_t count = 0;
  for (EdgeId e = 0; e < edges.size(); ++e) count += edges.act(s, e) == e;
  return count;
}

}  // namespace

CountMatrix dij_matrix(const Alignment& sigma, const Alignment& truth) {
  require_same_shape(sigma, truth, "dij_matrix");
  const std::size_t p = sigma.p();
  CountMatrix d(p, static_cast<std::int64_t>(sigma.n()));
  const auto rel = all_relative(sigma, truth);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) d(i, j) = static_cast<std::int64_t>(rel[i * p + j].fixed_points());
    }
  }
  return d;
}

CountMatrix edge_fixed_points(const Alignment& sigma, const Alignment& truth) {
  require_same_shape(sigma, truth, "edge_fixed_points");
  const std::size_t p = sigma.p();
  const EdgeIndex edges(sigma.n());
  CountMatrix d(p, static_cast<std::int64_t>(edges.size()));
  const auto rel = all_relative(sigma, truth);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) d(i, j) = fixed_edges(rel[i * p + j], edges);
    }
  }
  return d;
}

CountMatrix cij_matrix(const Alignment& a, const Alignment& b, const Alignment& truth) {
  require_same_shape(a, b, "cij_matrix");
  require_same_shape(a, truth, "cij_matrix");
  const std::size_t p = a.p();
  CountMatrix c(p, static_cast<std::int64_t>(a.n()));
  const auto ra = all_relative(a, truth);
  const auto rb = all_relative(b, truth);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i != j) c(i, j) = static_cast<std::int64_t>(agreement_count(ra[i * p + j], rb[i * p + j]));
    }
  }
  return c;
}

CountMatrix edge_agreements(const Alignment& a, const Alignment& b, const Alignment& truth) {
  require_same_shape(a, b, "edge_agreements");
  require_same_shape(a, truth, "edge_agreements");
  const std::size_t p = a.p();
  const EdgeIndex edges(a.n());
  CountMatrix c(p, static_cast<std::int64_t>(edges.size()));
  const auto ra = all_relative(a, truth);
  const auto rb = all_relative(b, truth);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      std::int64_t count = 0;
      for (EdgeId e = 0; e < edges.size(); ++e) {
        count += edges.act(ra[i * p + j], e) == edges.act(rb[i * p + j], e);
      }
      c(i, j) = count;
    }
  }
  return c;
}

}  // namespace malign
