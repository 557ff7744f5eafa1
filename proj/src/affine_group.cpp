#include "margulis/affine_group.hpp"

#include "margulis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace margulis {

AffineIsometry AffineIsometry::identity(int dim) {
  return AffineIsometry{Matrix::Identity(dim, dim), Vector::Zero(dim)};
}

double form_defect(const QuadraticSpace& space, const Matrix& a) {
  return (a.transpose() * space.form() * a - space.form()).cwiseAbs().maxCoeff();
}

namespace {

double membership_scale(const Matrix& a) {
  const double m = a.cwiseAbs().maxCoeff();
  return std::max(1.0, m * m);
}

std::string describe(double value) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << value;
  return out.str();
}

}  // namespace

void require_special_orthogonal(const QuadraticSpace& space, const Matrix& a, double tol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw MembershipError("linear part has wrong dimension");
  if (!a.allFinite()) throw MembershipError("linear part has non-finite entries");
  const double scale = membership_scale(a);
  const double defect = form_defect(space, a);
  if (defect > tol * scale)
    throw MembershipError("linear part does not preserve the form: |A^T J A - J|_max = " + describe(defect));
  const double det = a.partialPivLu().determinant();
  if (std::abs(det - 1.0) > tol * scale)
    throw MembershipError("linear part has determinant " + describe(det) + ", expected 1");
}

IdentityComponentVerdict in_identity_component(const QuadraticSpace& space, const Matrix& a, double tol) {
  require_special_orthogonal(space, a, tol);
  const Matrix f = space.reference_positive();
  // f is b-orthonormal, so b(A f_j, f_i) are the coordinates of the compression.
  const Matrix compressed = f.transpose() * space.form() * a * f;
  IdentityComponentVerdict verdict;
  verdict.compressed_determinant = compressed.partialPivLu().determinant();
  if (std::abs(verdict.compressed_determinant) <= tol)
    throw NumericalFailure("compressed determinant is numerically zero");
  verdict.in_identity_component = verdict.compressed_determinant > 0;
  verdict.isotropic_check = canonical_orientation(space, SubspaceFrame(a * space.standard_isotropic()));
  if ((verdict.isotropic_check == Orientation::positive) != verdict.in_identity_component)
    throw NumericalFailure("positive-subspace and isotropic orientation tests disagree");
  return verdict;
}

void require_member(const QuadraticSpace& space, const AffineIsometry& g, double tol) {
  if (g.translation.size() != space.dim()) throw MembershipError("translation has wrong dimension");
  if (!g.translation.allFinite()) throw MembershipError("translation has non-finite entries");
  if (!in_identity_component(space, g.linear, tol).in_identity_component)
    throw MembershipError("linear part lies in the non-identity component of SO(n+1,n)");
}

AffineIsometry compose(const AffineIsometry& g, const AffineIsometry& h) {
  return AffineIsometry{g.linear * h.linear, g.linear * h.translation + g.translation};
}

AffineIsometry inverse(const QuadraticSpace& space, const AffineIsometry& g) {
  // A^{-1} = J A^T J on O(n+1,n)
  const Matrix& j = space.form();
  Matrix inv = j * g.linear.transpose() * j;
  Vector u = -(inv * g.translation);
  return AffineIsometry{std::move(inv), std::move(u)};
}

AffineIsometry power(const QuadraticSpace& space, const AffineIsometry& g, int k) {
  const AffineIsometry base = k < 0 ? inverse(space, g) : g;
  AffineIsometry result = AffineIsometry::identity(space.dim());
  for (int i = 0; i < std::abs(k); ++i) result = compose(result, base);
  return result;
}

ReducedWord::ReducedWord(std::vector<int> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] == 0) throw ParameterError("word letters must be nonzero");
    if (i > 0 && letters_[i] == -letters_[i - 1])
      throw ParameterError("word is not reduced at position " + std::to_string(i));
  }
}

ReducedWord ReducedWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& l : out) l = -l;
  return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::operator*(const ReducedWord& other) const {
  std::vector<int> out = letters_;
  for (int l : other.letters_) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return ReducedWord(std::move(out));
}

std::string ReducedWord::encoded() const {
  std::string s = "[";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(letters_[i]);
  }
  return s + "]";
}

std::string ReducedWord::human() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ' ';
    const int g = std::abs(letters_[i]) - 1;
    if (g < 26) {
      s += static_cast<char>('a' + g);
    } else {
      s += "g" + std::to_string(g + 1);
    }
    if (letters_[i] < 0) s += "⁻¹";
  }
  return s;
}

int letter_rank(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (auto c = letter_rank(a.letters_[i]) <=> letter_rank(b.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<ReducedWord> word_ball(int rank, int max_length) {
  if (rank < 1) throw ParameterError("rank must be positive");
  if (max_length < 1) throw ParameterError("ball radius must be at least 1");
  std::vector<int> alphabet;
  for (int g = 1; g <= rank; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }
  std::vector<ReducedWord> ball;
  ball.reserve(word_ball_size(rank, max_length));
  std::vector<std::vector<int>> layer{{}};
  for (int m = 1; m <= max_length; ++m) {
    std::vector<std::vector<int>> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& w : layer) {
      for (int l : alphabet) {
        if (!w.empty() && w.back() == -l) continue;
        auto extended = w;
        extended.push_back(l);
        next.push_back(std::move(extended));
      }
    }
    for (const auto& w : next) ball.emplace_back(w);
    layer = std::move(next);
  }
  return ball;
}

std::size_t word_ball_size(int rank, int max_length) {
  std::size_t total = 0;
  std::size_t layer = 2 * static_cast<std::size_t>(rank);
  for (int m = 1; m <= max_length; ++m) {
    total += layer;
    layer *= 2 * static_cast<std::size_t>(rank) - 1;
  }
  return total;
}

FreeGroupRep::FreeGroupRep(QuadraticSpace space, std::vector<AffineIsometry> generators,
                           Tolerances tolerances, std::string label)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      tolerances_(tolerances),
      label_(std::move(label)) {
  if (generators_.empty()) throw ParameterError("representation needs at least one generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    try {
      require_member(space_, generators_[i], tolerances_.tol);
    } catch (const Error& e) {
      throw MembershipError("generator " + std::to_string(i) + ": " + e.what());
    }
    inverses_.push_back(margulis::inverse(space_, generators_[i]));
  }
}

const AffineIsometry& FreeGroupRep::letter_image(int letter) const {
  const int g = std::abs(letter);
  if (letter == 0 || g > rank()) throw ParameterError("letter " + std::to_string(letter) + " outside rank");
  return letter > 0 ? generators_[g - 1] : inverses_[g - 1];
}

AffineIsometry FreeGroupRep::evaluate(const ReducedWord& word) const {
  AffineIsometry result = AffineIsometry::identity(space_.dim());
  for (int l : word.letters()) result = compose(result, letter_image(l));
  return result;
}

Matrix reductive_element(const Matrix& block) {
  const Eigen::Index n = block.rows();
  Matrix a = Matrix::Zero(2 * n + 1, 2 * n + 1);
  a.topLeftCorner(n, n) = block;
  a(n, n) = 1.0;
  a.bottomRightCorner(n, n) = block.transpose().inverse();
  return a;
}

ReductiveBlockForm check_reductive_block_form(const QuadraticSpace& space, const Matrix& a, double tol) {
  require_special_orthogonal(space, a, tol);
  const int n = space.n();
  const double scale = membership_scale(a);
  ReductiveBlockForm out;
  // A e_j for j <= n must stay in span{e_1..e_n}; A e_j for j >= n+2 in span{e_{n+2}..}.
  const double leak_plus = a.block(n, 0, n + 1, n).cwiseAbs().maxCoeff();
  const double leak_minus = a.block(0, n + 1, n + 1, n).cwiseAbs().maxCoeff();
  if (std::max(leak_plus, leak_minus) > tol * scale) {
    out.defect = BlockFormDefect::not_stabilizing;
    return out;
  }
  if (std::abs(a(n, n) - 1.0) > tol * scale) {
    out.defect = BlockFormDefect::middle_entry;
    return out;
  }
  out.block = a.topLeftCorner(n, n);
  out.residual = (a - reductive_element(out.block)).cwiseAbs().maxCoeff();
  if (out.block.determinant() <= 0) out.defect = BlockFormDefect::non_positive_determinant;
  return out;
}

}  // namespace margulis
