#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "malign/permutation.hpp"

namespace malign {

/// A p-tuple of permutations of the same size with the first one fixed to the
/// identity. Coordinates are 0-based here: perms[0] is the reference graph.
class Alignment {
 public:
  Alignment() = default;
  explicit Alignment(std::vector<Permutation> perms);

  static Alignment identity(std::size_t n, std::size_t p);

  std::size_t n() const { return perms_.empty() ? 0 : perms_.front().size(); }
  std::size_t p() const { return perms_.size(); }
  const Permutation& operator[](std::size_t i) const { return perms_[i]; }
  const std::vector<Permutation>& perms() const { return perms_; }

  /// "1 2 3;2 1 3": semicolon-joined 1-based one-line permutations.
  std::string to_string() const;
  static Alignment parse(std::string_view text);

  friend bool operator==(const Alignment&, const Alignment&) = default;
  friend auto operator<=>(const Alignment&, const Alignment&) = default;

 private:
  std::vector<Permutation> perms_;
};

/// Same (n, p) or std::invalid_argument.
void require_same_shape(const Alignment& a, const Alignment& b, const char* what);

/// (Id, σ∘π_2, ..., σ∘π_p).
Alignment left_compose_tail(const Permutation& sigma, const Alignment& pi);

class StateSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// (n!)^(p-1), or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> alignment_count(std::size_t n, std::size_t p, std::uint64_t cap);

/// Rank in [0, (n!)^(p-1)): coordinates 2..p as mixed-radix digits, coordinate 2
/// most significant, each digit the lexicographic rank of that permutation.
std::uint64_t alignment_rank(const Alignment& a);
Alignment alignment_unrank(std::size_t n, std::size_t p, std::uint64_t rank);

/// Every alignment of (n, p) exactly once, in increasing rank order.
/// Construction throws StateSpaceTooLarge when (n!)^(p-1) > cap.
class AlignmentRange {
 public:
  AlignmentRange(std::size_t n, std::size_t p, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return count_; }

  class iterator {
   public:
    using value_type = Alignment;
    using difference_type = std::ptrdiff_t;
    using reference = const Alignment&;

    iterator() = default;
    reference operator*() const { return current_; }
    const Alignment* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    friend class AlignmentRange;
    iterator(std::size_t n, std::size_t p);
    void rebuild();

    std::vector<std::vector<Vertex>> images_;
    Alignment current_;
    bool done_ = false;
  };

  iterator begin() const { return iterator(n_, p_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  std::size_t n_;
  std::size_t p_;
  std::uint64_t count_;
};

inline AlignmentRange enumerate_alignments(std::size_t n, std::size_t p,
                                           std::uint64_t cap = kDefaultEnumerationCap) {
  return AlignmentRange(n, p, cap);
}

}  // namespace malign
