#include "margulis/catalog.hpp"

#include "margulis/errors.hpp"
#include "margulis/invariants.hpp"
#include "margulis/proximal.hpp"
#include "margulis/sampling.hpp"

#include <cmath>

namespace margulis {

Matrix boost_n1(double lambda) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = lambda;
  a(1, 1) = 1.0;
  a(2, 2) = 1.0 / lambda;
  return a;
}

Matrix rotation_n1(double angle) {
  const QuadraticSpace space(1);
  // orthonormal basis (f1, f2, w) with f1, f2 spanning the reference positive plane
  Matrix basis(3, 3);
  basis << space.reference_positive(), space.reference_negative();
  Matrix rot = Matrix::Identity(3, 3);
  rot(0, 0) = std::cos(angle);
  rot(0, 1) = -std::sin(angle);
  rot(1, 0) = std::sin(angle);
  rot(1, 1) = std::cos(angle);
  return basis * rot * basis.transpose();
}

std::vector<std::string> catalog_names() {
  return {"margulis_positive_n1", "mixed_sign_n1", "linear_only", "block_n2", "elliptic_n1"};
}

namespace {

GeneratorEntry entry(const Matrix& linear, const Vector& translation) {
  GeneratorEntry e;
  for (Eigen::Index i = 0; i < linear.rows(); ++i)
    for (Eigen::Index j = 0; j < linear.cols(); ++j) e.linear.push_back(linear(i, j));
  e.translation.assign(translation.data(), translation.data() + translation.size());
  return e;
}

Vector neutral_of(const QuadraticSpace& space, const Matrix& a) { return spectral_split(space, a).neutral; }

RepDocument build(const QuadraticSpace& space, const std::vector<Matrix>& linear, const std::vector<double>& scales,
                  const std::string& label) {
  RepDocument doc;
  doc.n = space.n();
  doc.rank = static_cast<int>(linear.size());
  doc.label = label;
  for (std::size_t i = 0; i < linear.size(); ++i) {
    const Vector u = scales[i] == 0.0 ? Vector::Zero(space.dim()).eval() : (scales[i] * neutral_of(space, linear[i])).eval();
    doc.generators.push_back(entry(linear[i], u));
  }
  return doc;
}

void require_signs(const RepDocument& doc, const std::vector<Sign>& expected) {
  const FreeGroupRep rep = to_rep(doc);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const AffineIsometry& g = rep.generators()[i];
    const Sign s = classify(margulis_invariant(rep.space(), g), g.translation, rep.tolerances().zero_tol);
    if (s != expected[i])
      throw NumericalFailure("catalog " + doc.label + ": generator " + std::to_string(i) + " has the wrong sign");
  }
}

std::vector<Matrix> schottky_pair(const CatalogParams& p) {
  const Matrix a = boost_n1(p.lambda);
  const Matrix rot = rotation_n1(p.separation);
  return {a, rot * a * rot.transpose()};
}

}  // namespace

RepDocument catalog(const std::string& name, const CatalogParams& params) {
  if (!(params.lambda > 1.0)) throw ParameterError("catalog lambda must exceed 1");
  const double c = params.translation;
  if (name == "margulis_positive_n1") {
    auto doc = build(QuadraticSpace(1), schottky_pair(params), {c, c}, name);
    require_signs(doc, {Sign::positive, Sign::positive});
    return doc;
  }
  if (name == "mixed_sign_n1") {
    auto doc = build(QuadraticSpace(1), schottky_pair(params), {c, -c}, name);
    require_signs(doc, {Sign::positive, Sign::negative});
    return doc;
  }
  if (name == "linear_only") {
    auto doc = build(QuadraticSpace(1), schottky_pair(params), {0.0, 0.0}, name);
    require_signs(doc, {Sign::zero, Sign::zero});
    return doc;
  }
  if (name == "block_n2") {
    const QuadraticSpace space(2);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 2.0;
    const Matrix a = reductive_element(m);
    SeededStream s1(2024, 1), s2(2024, 2);
    const Matrix k1 = random_compact_element(space, s1);
    const Matrix k2 = random_compact_element(space, s2);
    auto doc = build(space, {k1 * a * k1.transpose(), k2 * a * k2.transpose()}, {c, c}, name);
    require_signs(doc, {Sign::positive, Sign::positive});
    return doc;
  }
  if (name == "elliptic_n1") {
    auto doc = build(QuadraticSpace(1), {boost_n1(params.lambda), rotation_n1(1.0)}, {c, 0.0}, name);
    doc.generators[1].translation = {0.0, 1.0, 0.0};
    return doc;
  }
  throw ParameterError("unknown catalog entry '" + name + "'");
}

}  // namespace margulis
