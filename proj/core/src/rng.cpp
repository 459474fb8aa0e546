#include "malign/rng.hpp"

#include <numeric>
#include <utility>

namespace malign {

Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> images(n);
  std::iota(images.begin(), images.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(images[i - 1], images[pick(rng)]);
  }
  return Permutation(std::move(images));
}

}  // namespace malign
