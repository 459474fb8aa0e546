#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "malign/alignment.hpp"

namespace malign {

/// Dense square matrix of integer counts, indexed by graph pairs (i, j).
class CountMatrix {
 public:
  CountMatrix() = default;
  CountMatrix(std::size_t size, std::int64_t fill) : size_(size), data_(size * size, fill) {}

  std::size_t size() const { return size_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
  bool is_symmetric() const;

  friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::int64_t> data_;
};

/// Overlaps and distances between two alignments. The integer fields are the
/// exact numerators; the doubles are derived from them at the end.
struct OverlapReport {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t simultaneous_agreements = 0;  // ov·n
  std::int64_t coordinate_agreements = 0;    // ov_w·(p−1)·n
  std::int64_t squared_pair_agreements = 0;  // ov_c²·p(p−1)·n²

  double ov = 0, ov_w = 0, ov_c = 0;
  double d = 0, d_w = 0, d_c = 0;
};

enum class Metric { d, d_w, d_c };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

/// Fraction of points where a and b agree.
double overlap_pair(const Permutation& a, const Permutation& b);

OverlapReport overlap_multi(const Alignment& a, const Alignment& b);

/// Closed-ball membership dist(a, b) ≤ r, decided on the exact counts.
bool within_distance(const OverlapReport& report, Metric metric, double r);

/// σ_ij = (π_j*)⁻¹ σ_j σ_i⁻¹ π_i*, the relative permutation between graphs i
/// and j under candidate σ measured against the truth.
Permutation relative_permutation(const Alignment& sigma, const Alignment& truth, std::size_t i,
                                 std::size_t j);

/// d_ij: fixed points of σ_ij; diagonal n.
CountMatrix dij_matrix(const Alignment& sigma, const Alignment& truth);

/// D_ij: edges fixed by σ_ij; diagonal C(n,2).
CountMatrix edge_fixed_points(const Alignment& sigma, const Alignment& truth);

/// c_ij(σ, σ'): points where σ_ij and σ'_ij agree; diagonal n.
CountMatrix cij_matrix(const Alignment& a, const Alignment& b, const Alignment& truth);

/// C_ij(σ, σ'): edges where σ_ij and σ'_ij agree; diagonal C(n,2).
CountMatrix edge_agreements(const Alignment& a, const Alignment& b, const Alignment& truth);

}  // namespace malign
