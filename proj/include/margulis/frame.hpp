#pragma once

#include <Eigen/Dense>

#include <optional>

namespace margulis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// R^{n+1,n} with the anti-diagonal form
///
///       [ 0   0  I_n ]
///   J = [ 0   1   0  ]
///       [ I_n 0   0  ]
///
/// The standard basis e_1..e_{2n+1} has span{e_1..e_n} and
/// span{e_{n+2}..e_{2n+1}} as a transverse pair of maximal isotropics.
class QuadraticSpace {
 public:
  explicit QuadraticSpace(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const Matrix& form() const { return form_; }

  double b(const Vector& v, const Vector& w) const { return v.dot(form_ * w); }
  Matrix gram(const Matrix& frame) const { return frame.transpose() * form_ * frame; }

  /// (e_i + e_{n+1+i})/sqrt2 for i = 1..n, then e_{n+1}; b-orthonormal, positive.
  Matrix reference_positive() const;
  /// (e_i - e_{n+1+i})/sqrt2 for i = 1..n; b(w_i, w_j) = -delta_ij.
  Matrix reference_negative() const;
  /// e_1..e_n
  Matrix standard_isotropic() const;
  /// e_{n+2}..e_{2n+1}
  Matrix opposite_isotropic() const;

 private:
  int n_;
  Matrix form_;
};

QuadraticSpace standard_form(int n);

/// Ordered basis of a k-dimensional subspace. Full rank is enforced at
/// construction: smallest singular value > tol * largest singular value.
class SubspaceFrame {
 public:
  explicit SubspaceFrame(Matrix columns, double tol = kDefaultTol);

  const Matrix& columns() const { return columns_; }
  int dim() const { return static_cast<int>(columns_.cols()); }
  int ambient() const { return static_cast<int>(columns_.rows()); }
  double tol() const { return tol_; }

  /// Euclidean-orthonormal basis of the same span (orientation not preserved).
  Matrix orthonormal() const;

 private:
  Matrix columns_;
  double tol_;
};

struct Signature {
  int degenerate = 0;
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class Orientation : int { negative = -1, positive = 1 };

inline Orientation operator*(Orientation a, Orientation b) {
  return static_cast<int>(a) == static_cast<int>(b) ? Orientation::positive
                                                     : Orientation::negative;
}

/// Counts of zero/positive/negative eigenvalues of the Gram matrix on an
/// orthonormalized copy of the frame (Sylvester: basis independent).
Signature signature(const QuadraticSpace& space, const SubspaceFrame& frame);

/// {w : b(v, w) = 0 for all v in span(frame)}.
SubspaceFrame b_orthogonal_complement(const QuadraticSpace& space, const SubspaceFrame& frame);

/// Orientation of an n-dimensional isotropic frame.
///
/// L is carried isomorphically onto the negative-definite complement
/// V_- = positive^perp by projecting along `positive`, and V_- is oriented by
/// projection onto the reference negative subspace along its complement.
/// The sign does not depend on `positive`; the default is
/// QuadraticSpace::reference_positive(). The frame (e_1..e_n) is positive.
Orientation canonical_orientation(const QuadraticSpace& space, const SubspaceFrame& isotropic,
                                  const std::optional<SubspaceFrame>& positive = std::nullopt);

/// Maximal isotropic subspace with its canonical orientation.
class IsotropicFrame {
 public:
  IsotropicFrame(const QuadraticSpace& space, SubspaceFrame frame);
  /// Explicit isotropy tolerance for the entries of the Gram matrix of the
  /// orthonormalized frame.
  IsotropicFrame(const QuadraticSpace& space, SubspaceFrame frame, double isotropy_tol);

  const SubspaceFrame& frame() const { return frame_; }
  const Matrix& columns() const { return frame_.columns(); }
  Orientation orientation() const { return orientation_; }

  /// Columns with the first one negated when the frame is negatively oriented.
  Matrix positive_basis() const;

 private:
  SubspaceFrame frame_;
  Orientation orientation_;
};

/// Largest principal angle between two equal-dimensional spans (Euclidean).
double largest_principal_angle(const Matrix& a, const Matrix& b);

bool same_span(const SubspaceFrame& a, const SubspaceFrame& b, double angle_threshold);

/// Euclidean-orthonormal basis of span(m) by thin SVD; throws RankDeficient.
Matrix orthonormal_basis(const Matrix& m, double tol = kDefaultTol);

/// Orthonormal basis of ker(m) of prescribed dimension; throws NumericalFailure
/// when the rank of m is not cols - kernel_dim within tol.
Matrix kernel_basis(const Matrix& m, int kernel_dim, double tol = kDefaultTol);

}  // namespace margulis
