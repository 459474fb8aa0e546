#include "malign/permutation.hpp"

#include <stdexcept>

namespace malign {

Permutation::Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Vertex v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw std::invalid_argument("Permutation: images are not a bijection of {0..n-1}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(i);
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<Vertex> zero_based;
  zero_based.reserve(images.size());
  for (int v : images) {
    if (v < 1 || static_cast<std::size_t>(v) > images.size()) {
      throw std::invalid_argument("Permutation: 1-based image out of range");
    }
    zero_based.push_back(static_cast<Vertex>(v - 1));
  }
  return Permutation(std::move(zero_based));
}

bool Permutation::is_identity() const { return fixed_points() == size(); }

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == i;
  return count;
}

std::vector<int> Permutation::to_one_based() const {
  std::vector<int> out;
  out.reserve(images_.size());
  for (Vertex v : images_) out.push_back(static_cast<int>(v) + 1);
  return out;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i] + 1);
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: mismatched n");
  std::vector<Vertex> images(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) images[x] = a(b(static_cast<Vertex>(x)));
  return Permutation(std::move(images));
}

Permutation inverse(const Permutation& a) {
  std::vector<Vertex> images(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) images[a(static_cast<Vertex>(x))] = static_cast<Vertex>(x);
  return Permutation(std::move(images));
}

std::size_t agreement_count(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("agreement_count: mismatched n");
  std::size_t count = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    count += a(static_cast<Vertex>(x)) == b(static_cast<Vertex>(x));
  }
  return count;
}

std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw std::overflow_error("factorial: n! does not fit in 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Lehmer code in the factorial number system.
std::uint64_t permutation_rank(const Permutation& a) {
  const std::size_t n = a.size();
  std::vector<bool> used(n, false);
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (Vertex v = 0; v < a(static_cast<Vertex>(i)); ++v) smaller += !used[v];
    used[a(static_cast<Vertex>(i))] = true;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

Permutation permutation_unrank(std::size_t n, std::uint64_t rank) {
  if (rank >= factorial(n)) throw std::out_of_range("permutation_unrank: rank >= n!");
  std::vector<std::uint64_t> digits(n);
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t base = n - i;
    digits[i] = rank % base;
    rank /= base;
  }
  std::vector<Vertex> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Vertex>(i);
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    images[i] = pool[digits[i]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return Permutation(std::move(images));
}

}  // namespace malign
