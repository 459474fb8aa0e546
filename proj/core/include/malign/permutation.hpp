#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace malign {

/// Vertex label. Internally 0-based; the 1-based ⟦1,n⟧ labels only appear at
/// I/O boundaries (CLI, JSON, CSV).
using Vertex = std::uint32_t;

/// A bijection of {0, ..., n-1}, stored as its one-line image table.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(std::size_t n);
  /// Parses 1-based images, e.g. {2, 1, 3} for the transposition (1 2).
  static Permutation from_one_based(std::span<const int> images);

  std::size_t size() const { return images_.size(); }
  Vertex operator()(Vertex x) const { return images_[x]; }
  std::span<const Vertex> images() const { return images_; }

  bool is_identity() const;
  std::size_t fixed_points() const;

  std::vector<int> to_one_based() const;
  /// Space-separated 1-based one-line notation ("2 1 3").
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

/// compose(a, b)(x) = a(b(x)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

/// Number of points where a and b agree.
std::size_t agreement_count(const Permutation& a, const Permutation& b);

/// Lexicographic rank in [0, n!) and its inverse.
std::uint64_t permutation_rank(const Permutation& a);
Permutation permutation_unrank(std::size_t n, std::uint64_t rank);

/// n! as an unsigned integer; throws std::overflow_error past 20!.
std::uint64_t factorial(std::size_t n);

}  // namespace malign
