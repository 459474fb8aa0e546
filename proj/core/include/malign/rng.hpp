#pragma once

#include <cstdint>
#include <random>

#include "malign/permutation.hpp"

namespace malign {

/// The project-wide random engine: 64-bit Mersenne Twister. Engine output is
/// fully specified by the standard, so equal seeds give equal streams; the
/// distributions on top come from the standard library in use.
using Rng = std::mt19937_64;

Rng seeded_rng(std::uint64_t seed);

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for an independent sub-stream, e.g. derive_seed(master, grid, trial).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Uniform permutation of size n by Fisher–Yates.
Permutation random_permutation(std::size_t n, Rng& rng);

}  // namespace malign
