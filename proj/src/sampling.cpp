#include "margulis/sampling.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace margulis {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL))) {}

double SeededStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededStream::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

Matrix random_skew(int d, SeededStream& stream, double scale) {
  Matrix s = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      s(i, j) = scale * stream.normal();
      s(j, i) = -s(i, j);
    }
  }
  return s;
}

}  // namespace

Matrix random_group_element(const QuadraticSpace& space, SeededStream& stream, double scale) {
  // X = J S satisfies X^T J + J X = 0 for skew S.
  const Matrix x = space.form() * random_skew(space.dim(), stream, scale);
  return x.exp();
}

Matrix random_compact_element(const QuadraticSpace& space, SeededStream& stream, double scale) {
  const Matrix& j = space.form();
  const Matrix s = random_skew(space.dim(), stream, scale);
  // S commuting with J makes J S skew as well, so exp(J S) is orthogonal.
  const Matrix commuting = 0.5 * (s + j * s * j);
  return (j * commuting).exp();
}

SubspaceFrame random_positive_definite_subspace(const QuadraticSpace& space, std::uint64_t seed) {
  SeededStream stream(seed, 0);
  const Matrix g = random_group_element(space, stream, 0.5);
  return SubspaceFrame(g * space.reference_positive());
}

Matrix random_isotropic_frame(const QuadraticSpace& space, SeededStream& stream, double scale) {
  return orthonormal_basis(random_group_element(space, stream, scale) * space.standard_isotropic());
}

}  // namespace margulis
