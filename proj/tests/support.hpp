#pragma once

#include "margulis/affine_group.hpp"
#include "margulis/frame.hpp"
#include "margulis/sampling.hpp"

#include <Eigen/Dense>

#include <vector>

namespace testing_support {

using margulis::Matrix;
using margulis::QuadraticSpace;
using margulis::Vector;

inline Matrix diag(std::vector<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) v(static_cast<Eigen::Index>(i)) = d[i];
  return v.asDiagonal();
}

inline Vector vec(std::vector<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) v(static_cast<Eigen::Index>(i)) = d[i];
  return v;
}

inline Vector unit(int dim, int i) { return Vector::Unit(dim, i); }

/// blockdiag(diag(values), 1, diag(values)^-1)
inline Matrix diagonal_boost(const std::vector<double>& values) {
  return margulis::reductive_element(diag(values));
}

/// Element of the non-identity component: blockdiag(diag(-1,1,..), 1, diag(-1,1,..)).
inline Matrix flip(int n) {
  std::vector<double> d(n, 1.0);
  d[0] = -1.0;
  return margulis::reductive_element(diag(d));
}

/// Sign of the permutation matrix taking columns (A | v | B) to (B | v | A)
/// with |A| = |B| = n.
inline int block_swap_sign(int n) {
  const int d = 2 * n + 1;
  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    p(i, n + 1 + i) = 1.0;
    p(n + 1 + i, i) = 1.0;
  }
  p(n, n) = 1.0;
  return p.determinant() > 0 ? 1 : -1;
}

/// b-orthonormality defect of a frame against the expected Gram matrix.
inline double gram_defect(const QuadraticSpace& space, const Matrix& frame, const Matrix& expected) {
  return (space.gram(frame) - expected).cwiseAbs().maxCoeff();
}

}  // namespace testing_support
