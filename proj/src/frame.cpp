#include "margulis/frame.hpp"

#include "margulis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace margulis {

QuadraticSpace::QuadraticSpace(int n) : n_(n) {
  if (n < 1) throw ParameterError("quadratic space needs n >= 1, got " + std::to_string(n));
  const int d = dim();
  form_ = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    form_(i, n + 1 + i) = 1.0;
    form_(n + 1 + i, i) = 1.0;
  }
  form_(n, n) = 1.0;
}

QuadraticSpace standard_form(int n) { return QuadraticSpace(n); }

Matrix QuadraticSpace::reference_positive() const {
  Matrix f = Matrix::Zero(dim(), n_ + 1);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n_; ++i) {
    f(i, i) = s;
    f(n_ + 1 + i, i) = s;
  }
  f(n_, n_) = 1.0;
  return f;
}

Matrix QuadraticSpace::reference_negative() const {
  Matrix w = Matrix::Zero(dim(), n_);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n_; ++i) {
    w(i, i) = s;
    w(n_ + 1 + i, i) = -s;
  }
  return w;
}

Matrix QuadraticSpace::standard_isotropic() const {
  Matrix e = Matrix::Zero(dim(), n_);
  for (int i = 0; i < n_; ++i) e(i, i) = 1.0;
  return e;
}

Matrix QuadraticSpace::opposite_isotropic() const {
  Matrix e = Matrix::Zero(dim(), n_);
  for (int i = 0; i < n_; ++i) e(n_ + 1 + i, i) = 1.0;
  return e;
}

Matrix orthonormal_basis(const Matrix& m, double tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  if (s.size() < m.cols() || !(s(s.size() - 1) > tol * s(0))) {
    throw RankDeficient("frame is rank deficient: smallest singular value " +
                        std::to_string(s.size() ? s(s.size() - 1) : 0.0));
  }
  return svd.matrixU().leftCols(m.cols());
}

Matrix kernel_basis(const Matrix& m, int kernel_dim, double tol) {
  const Eigen::Index cols = m.cols();
  const Eigen::Index rank = cols - kernel_dim;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (rank > 0) {
    if (rank > s.size() || !(s(rank - 1) > tol * s(0)))
      throw NumericalFailure("kernel has dimension larger than " + std::to_string(kernel_dim));
    if (rank < s.size() && s(rank) > std::sqrt(tol) * s(0))
      throw NumericalFailure("kernel has dimension smaller than " + std::to_string(kernel_dim));
  }
  return svd.matrixV().rightCols(kernel_dim);
}

SubspaceFrame::SubspaceFrame(Matrix columns, double tol) : columns_(std::move(columns)), tol_(tol) {
  if (columns_.cols() > columns_.rows())
    throw RankDeficient("frame has more columns than the ambient dimension");
  if (columns_.cols() > 0) (void)orthonormal_basis(columns_, tol_);
}

Matrix SubspaceFrame::orthonormal() const { return orthonormal_basis(columns_, tol_); }

Signature signature(const QuadraticSpace& space, const SubspaceFrame& frame) {
  Signature sig;
  if (frame.dim() == 0) return sig;
  const Matrix q = frame.orthonormal();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(space.gram(q));
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (std::abs(lambda) <= frame.tol()) {
      ++sig.degenerate;
    } else if (lambda > 0) {
      ++sig.positive;
    } else {
      ++sig.negative;
    }
  }
  return sig;
}

SubspaceFrame b_orthogonal_complement(const QuadraticSpace& space, const SubspaceFrame& frame) {
  const int k = frame.dim();
  if (k == 0) return SubspaceFrame(Matrix::Identity(space.dim(), space.dim()), frame.tol());
  const Matrix q = frame.orthonormal();
  // b(v, w) = v^T J w over v in span(q): the kernel of q^T J.
  Matrix pairing = q.transpose() * space.form();
  return SubspaceFrame(kernel_basis(pairing, space.dim() - k, frame.tol()), frame.tol());
}

namespace {

// Coordinates on the reference negative subspace W0 = span(w_i), projecting
// along W0^perp. With b(w_i, w_j) = -delta_ij the i-th coordinate is -b(x, w_i).
Matrix negative_coordinates(const QuadraticSpace& space, const Matrix& x) {
  return -(space.reference_negative().transpose() * space.form() * x);
}

}  // namespace

Orientation canonical_orientation(const QuadraticSpace& space, const SubspaceFrame& isotropic,
                                  const std::optional<SubspaceFrame>& positive) {
  const int n = space.n();
  if (isotropic.dim() != n || isotropic.ambient() != space.dim())
    throw SignatureError("orientation needs an n-dimensional frame in R^{2n+1}");

  Matrix image;
  if (positive) {
    if (positive->dim() != n + 1 || signature(space, *positive) != Signature{0, n + 1, 0})
      throw SignatureError("reference subspace is not an (n+1)-dimensional positive definite subspace");
    const Matrix& f = positive->columns();
    const Matrix g = space.gram(f);
    // projection onto positive^perp along positive
    const Matrix along = f * g.ldlt().solve(f.transpose() * space.form() * isotropic.columns());
    image = negative_coordinates(space, isotropic.columns() - along);
  } else {
    image = negative_coordinates(space, isotropic.columns());
  }

  Eigen::JacobiSVD<Matrix> svd(image);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > isotropic.tol() * std::max(1.0, s(0))))
    throw NumericalFailure("projection of the isotropic frame is rank deficient");
  const double det = image.partialPivLu().determinant();
  return det > 0 ? Orientation::positive : Orientation::negative;
}

IsotropicFrame::IsotropicFrame(const QuadraticSpace& space, SubspaceFrame frame)
    : IsotropicFrame(space, frame, frame.tol()) {}

IsotropicFrame::IsotropicFrame(const QuadraticSpace& space, SubspaceFrame frame, double isotropy_tol)
    : frame_(std::move(frame)), orientation_(Orientation::positive) {
  if (frame_.dim() != space.n() || frame_.ambient() != space.dim())
    throw SignatureError("isotropic frame must have n columns in R^{2n+1}");
  const double defect = space.gram(frame_.orthonormal()).cwiseAbs().maxCoeff();
  if (defect > isotropy_tol)
    throw SignatureError("frame is not isotropic: Gram defect " + std::to_string(defect));
  orientation_ = canonical_orientation(space, frame_);
}

Matrix IsotropicFrame::positive_basis() const {
  Matrix basis = frame_.columns();
  if (orientation_ == Orientation::negative) basis.col(0) *= -1.0;
  return basis;
}

double largest_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ParameterError("principal angles need equal dimensions");
  if (a.cols() == 0) return 0.0;
  const Matrix qa = orthonormal_basis(a, 1e-14);
  const Matrix qb = orthonormal_basis(b, 1e-14);
  Eigen::JacobiSVD<Matrix> cos_svd(qa.transpose() * qb);
  const double cos_min = cos_svd.singularValues().minCoeff();
  Eigen::JacobiSVD<Matrix> sin_svd(qb - qa * (qa.transpose() * qb));
  const double sin_max = sin_svd.singularValues().maxCoeff();
  return std::atan2(sin_max, cos_min);
}

bool same_span(const SubspaceFrame& a, const SubspaceFrame& b, double angle_threshold) {
  if (a.dim() != b.dim()) return false;
  return largest_principal_angle(a.columns(), b.columns()) < angle_threshold;
}

}  // namespace margulis
