#pragma once

#include "margulis/frame.hpp"

#include <cstdint>
#include <random>

namespace margulis {

/// Deterministic random stream keyed by (seed, index). Each sample of a Monte
/// Carlo run draws from its own stream, so results do not depend on
/// evaluation order.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t index);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller on uniform()).
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// exp(J S) for a random skew S with N(0, scale^2) entries; always in SO^0(n+1,n).
Matrix random_group_element(const QuadraticSpace& space, SeededStream& stream, double scale = 0.5);

/// Random element of the maximal compact SO^0(n+1,n) ∩ O(2n+1).
Matrix random_compact_element(const QuadraticSpace& space, SeededStream& stream, double scale = 1.0);

/// g * reference_positive() for a seeded random g; signature (0, n+1, 0).
SubspaceFrame random_positive_definite_subspace(const QuadraticSpace& space, std::uint64_t seed);

/// g * standard_isotropic() for a random g; surjects onto the isotropic Grassmannian.
Matrix random_isotropic_frame(const QuadraticSpace& space, SeededStream& stream, double scale = 1.0);

}  // namespace margulis
