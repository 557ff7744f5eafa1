#pragma once

#include "margulis/frame.hpp"

#include <compare>
#include <string>
#include <vector>

namespace margulis {

struct Tolerances {
  /// Rank, isotropy and membership tolerance.
  double tol = kDefaultTol;
  /// Base of the scale-aware zero test for Margulis invariants:
  /// |alpha| <= zero_tol * (1 + |u|).
  double zero_tol = 1e-10;
};

/// x -> linear * x + translation, an element of SO^0(n+1,n) ⋉ R^{2n+1}.
struct AffineIsometry {
  Matrix linear;
  Vector translation;

  static AffineIsometry identity(int dim);
  Vector apply(const Vector& x) const { return linear * x + translation; }
};

struct IdentityComponentVerdict {
  bool in_identity_component = false;
  /// det of the compression of A to the reference positive subspace.
  double compressed_determinant = 0.0;
  /// Orientation of A * (e_1..e_n) relative to (e_1..e_n).
  Orientation isotropic_check = Orientation::positive;
};

/// max |A^T J A - J| entrywise.
double form_defect(const QuadraticSpace& space, const Matrix& a);

/// Throws MembershipError unless A^T J A = J and det A = 1 within
/// tol * max(1, |A|_max^2).
void require_special_orthogonal(const QuadraticSpace& space, const Matrix& a, double tol);

IdentityComponentVerdict in_identity_component(const QuadraticSpace& space, const Matrix& a,
                                               double tol = kDefaultTol);

/// Full membership check for SO^0(n+1,n) ⋉ R^{2n+1}; throws MembershipError.
void require_member(const QuadraticSpace& space, const AffineIsometry& g, double tol = kDefaultTol);

AffineIsometry compose(const AffineIsometry& g, const AffineIsometry& h);
AffineIsometry inverse(const QuadraticSpace& space, const AffineIsometry& g);
AffineIsometry power(const QuadraticSpace& space, const AffineIsometry& g, int k);

/// Element of a free group as letters in {±1..±rank}, freely reduced.
class ReducedWord {
 public:
  ReducedWord() = default;
  /// Throws ParameterError on a zero letter or an adjacent cancelling pair.
  explicit ReducedWord(std::vector<int> letters);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  ReducedWord inverse() const;
  /// Free reduction of the concatenation.
  ReducedWord operator*(const ReducedWord& other) const;

  /// "[1,-2,1]"
  std::string encoded() const;
  /// "a b⁻¹ a", "e" for the empty word.
  std::string human() const;

  /// Shortlex, letters ordered a < a⁻¹ < b < b⁻¹ < ...
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b);
  friend bool operator==(const ReducedWord& a, const ReducedWord& b) = default;

 private:
  std::vector<int> letters_;
};

/// Position of a letter in the generator order a, a⁻¹, b, b⁻¹, ...
int letter_rank(int letter);

/// All reduced words of length 1..max_length in shortlex order.
std::vector<ReducedWord> word_ball(int rank, int max_length);

/// Number of reduced words of length 1..max_length.
std::size_t word_ball_size(int rank, int max_length);

/// rho: F_rank -> SO^0(n+1,n) ⋉ R^{2n+1}. Generators are validated on construction.
class FreeGroupRep {
 public:
  FreeGroupRep(QuadraticSpace space, std::vector<AffineIsometry> generators, Tolerances tolerances = {},
               std::string label = {});

  const QuadraticSpace& space() const { return space_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  const std::vector<AffineIsometry>& generators() const { return generators_; }
  const Tolerances& tolerances() const { return tolerances_; }
  const std::string& label() const { return label_; }

  /// Image of a single letter (generator or its inverse).
  const AffineIsometry& letter_image(int letter) const;
  /// Left-to-right product of letter images; empty word -> identity.
  AffineIsometry evaluate(const ReducedWord& word) const;

 private:
  QuadraticSpace space_;
  std::vector<AffineIsometry> generators_;
  std::vector<AffineIsometry> inverses_;
  Tolerances tolerances_;
  std::string label_;
};

enum class BlockFormDefect { none, not_stabilizing, middle_entry, non_positive_determinant };

struct ReductiveBlockForm {
  BlockFormDefect defect = BlockFormDefect::none;
  /// Upper-left n x n block M of blockdiag(M, 1, M^{-T}).
  Matrix block;
  /// max entrywise deviation of A from blockdiag(M, 1, M^{-T}).
  double residual = 0.0;

  bool ok() const { return defect == BlockFormDefect::none; }
};

/// Elements of SO^0(n+1,n) stabilizing both standard isotropics are exactly
/// blockdiag(M, 1, M^{-T}) with det M > 0. Throws MembershipError when A is
/// not in SO(n+1,n); other failures are reported in the defect field.
ReductiveBlockForm check_reductive_block_form(const QuadraticSpace& space, const Matrix& a,
                                              double tol = kDefaultTol);

Matrix reductive_element(const Matrix& block);

}  // namespace margulis
