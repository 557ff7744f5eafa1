#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "margulis/affine_group.hpp"
#include "margulis/errors.hpp"
#include "margulis/sampling.hpp"
#include "support.hpp"

#include <cmath>
#include <set>

using namespace margulis;
using testing_support::diag;
using testing_support::diagonal_boost;
using testing_support::flip;
using testing_support::vec;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

AffineIsometry random_affine(const QuadraticSpace& space, SeededStream& stream, double scale = 0.5) {
  AffineIsometry g;
  g.linear = random_group_element(space, stream, scale);
  g.translation = Vector(space.dim());
  for (int i = 0; i < space.dim(); ++i) g.translation(i) = stream.normal();
  return g;
}

}  // namespace

TEST_CASE("identity component examples") {
  const QuadraticSpace space(1);
  CHECK(in_identity_component(space, Matrix::Identity(3, 3)).in_identity_component);

  const auto flipped = in_identity_component(space, diag({-1, 1, -1}));
  CHECK_FALSE(flipped.in_identity_component);
  // acts as diag(1, -1) on the reference positive plane
  CHECK(flipped.compressed_determinant == doctest::Approx(-1.0));
  CHECK(flipped.isotropic_check == Orientation::negative);

  const auto boost = in_identity_component(space, diag({2, 1, 0.5}));
  CHECK(boost.in_identity_component);
  CHECK(boost.isotropic_check == Orientation::positive);
}

TEST_CASE("membership errors") {
  const QuadraticSpace space(1);
  CHECK_THROWS_AS(in_identity_component(space, diag({1, -1, 1})), MembershipError);
  CHECK_THROWS_AS(in_identity_component(space, diag({2, 1, 2})), MembershipError);
  CHECK_THROWS_AS(require_member(space, {diag({-1, 1, -1}), Vector::Zero(3)}), MembershipError);
  CHECK_THROWS_AS(require_member(space, {Matrix::Identity(3, 3), Vector::Zero(2)}), MembershipError);
  CHECK_NOTHROW(require_member(space, {diag({2, 1, 0.5}), vec({0, 3, 0})}));
}

TEST_CASE("identity component verdict is a homomorphism to {+1,-1}") {
  for (int n : {1, 2}) {
    const QuadraticSpace space(n);
    for (int trial = 0; trial < 250; ++trial) {
      SeededStream stream(300 + n, trial);
      Matrix a = random_group_element(space, stream, 0.7);
      Matrix b = random_group_element(space, stream, 0.7);
      const bool fa = stream.uniform() < 0.5, fb = stream.uniform() < 0.5;
      if (fa) a = a * flip(n);
      if (fb) b = flip(n) * b;
      const bool va = in_identity_component(space, a).in_identity_component;
      const bool vb = in_identity_component(space, b).in_identity_component;
      CHECK(va == !fa);
      CHECK(vb == !fb);
      CHECK(in_identity_component(space, a * b).in_identity_component == (va == vb));
    }
  }
}

TEST_CASE("composition and inversion") {
  const QuadraticSpace space(1);
  const AffineIsometry g{diag({2, 1, 0.5}), vec({0, 3, 0})};
  const auto id = AffineIsometry::identity(3);
  CHECK(compose(g, id).linear == g.linear);
  CHECK(compose(g, id).translation == g.translation);

  const auto inv = inverse(space, g);
  CHECK(max_abs(inv.linear - diag({0.5, 1, 2})) < 1e-15);
  CHECK(max_abs(inv.translation - vec({0, -3, 0})) < 1e-15);
  const auto e = compose(g, inv);
  CHECK(max_abs(e.linear - Matrix::Identity(3, 3)) < 1e-12);
  CHECK(e.translation.norm() < 1e-12);

  const AffineIsometry u{Matrix::Identity(3, 3), vec({1, 2, 3})};
  const AffineIsometry v{Matrix::Identity(3, 3), vec({-4, 0.5, 1})};
  CHECK(compose(u, v).translation == vec({-3, 2.5, 4}));

  SeededStream stream(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticSpace s3(3);
    const auto h = random_affine(s3, stream);
    const auto back = inverse(s3, inverse(s3, h));
    CHECK(max_abs(back.linear - h.linear) < 1e-12);
    CHECK((back.translation - h.translation).norm() < 1e-12);
  }

  CHECK(max_abs(power(space, g, 3).linear - diag({8, 1, 0.125})) < 1e-14);
  CHECK(power(space, g, 3).translation == vec({0, 9, 0}));
  CHECK(max_abs(power(space, g, -2).linear - diag({0.25, 1, 4})) < 1e-14);
  CHECK(power(space, g, 0).linear == Matrix::Identity(3, 3));
}

TEST_CASE("membership is closed under long products") {
  for (int n = 1; n <= 3; ++n) {
    const QuadraticSpace space(n);
    for (int trial = 0; trial < 30; ++trial) {
      SeededStream stream(40 + n, trial);
      AffineIsometry w = AffineIsometry::identity(space.dim());
      for (int len = 0; len < 12; ++len) {
        const auto h = random_affine(space, stream, 0.3);
        w = compose(w, stream.uniform() < 0.5 ? h : inverse(space, h));
      }
      const double scale = std::max(1.0, std::pow(max_abs(w.linear), 2));
      CHECK(form_defect(space, w.linear) <= 10 * kDefaultTol * scale);
      CHECK_NOTHROW(require_member(space, w));
    }
  }
}

TEST_CASE("reduced words") {
  CHECK_THROWS_AS(ReducedWord({1, -1}), ParameterError);
  CHECK_THROWS_AS(ReducedWord({2, 0, 1}), ParameterError);
  const ReducedWord w({1, -2, 1});
  CHECK(w.encoded() == "[1,-2,1]");
  CHECK(w.human() == "a b⁻¹ a");
  CHECK(ReducedWord{}.human() == "e");
  CHECK(ReducedWord{}.encoded() == "[]");
  CHECK(w.inverse() == ReducedWord({-1, 2, -1}));
  CHECK((w * w.inverse()).empty());
  CHECK(ReducedWord({1, 2}) * ReducedWord({-2, 3}) == ReducedWord({1, 3}));
  CHECK(ReducedWord({3}).human() == "c");
}

TEST_CASE("word ball counts and order") {
  CHECK(word_ball(2, 1).size() == 4);
  CHECK(word_ball(2, 2).size() == 16);
  CHECK(word_ball(3, 2).size() == 36);
  for (int rank = 1; rank <= 3; ++rank)
    for (int len = 1; len <= 5; ++len) {
      std::size_t expected = 0;
      for (int m = 1; m <= len; ++m)
        expected += static_cast<std::size_t>(2 * rank * std::pow(2 * rank - 1, m - 1));
      CHECK(word_ball_size(rank, len) == expected);
      const auto ball = word_ball(rank, len);
      REQUIRE(ball.size() == expected);
      for (std::size_t i = 1; i < ball.size(); ++i) CHECK(ball[i - 1] < ball[i]);
      std::set<std::vector<int>> distinct;
      for (const auto& g : ball) distinct.insert(g.letters());
      CHECK(distinct.size() == expected);
    }
  const auto ball = word_ball(2, 1);
  CHECK(ball[0].letters() == std::vector<int>{1});
  CHECK(ball[1].letters() == std::vector<int>{-1});
  CHECK(ball[2].letters() == std::vector<int>{2});
  CHECK(ball[3].letters() == std::vector<int>{-2});
}

TEST_CASE("word evaluation is a homomorphism") {
  const QuadraticSpace space(2);
  SeededStream stream(77, 0);
  const FreeGroupRep rep(space, {random_affine(space, stream), random_affine(space, stream)});
  CHECK(rep.evaluate(ReducedWord{}).linear == Matrix::Identity(5, 5));
  CHECK(rep.evaluate(ReducedWord({1})).linear == rep.generators()[0].linear);
  const auto w = compose(rep.generators()[0], inverse(space, rep.generators()[1]));
  CHECK(max_abs(rep.evaluate(ReducedWord({1, -2})).linear - w.linear) < 1e-12);
  CHECK((rep.evaluate(ReducedWord({1, -2})).translation - w.translation).norm() < 1e-12);

  for (const auto& u : word_ball(2, 2))
    for (const auto& v : word_ball(2, 2)) {
      if (u.letters().back() == -v.letters().front()) continue;
      const auto uv = rep.evaluate(u * v);
      const auto prod = compose(rep.evaluate(u), rep.evaluate(v));
      CHECK(max_abs(uv.linear - prod.linear) < 1e-10);
      CHECK((uv.translation - prod.translation).norm() < 1e-10);
    }
}

TEST_CASE("representations reject invalid generators") {
  const QuadraticSpace space(1);
  const AffineIsometry good{diag({2, 1, 0.5}), vec({0, 3, 0})};
  const AffineIsometry bad{diag({1, -1, 1}), vec({0, 0, 0})};
  try {
    FreeGroupRep rep(space, {good, bad});
    FAIL("expected MembershipError");
  } catch (const MembershipError& e) {
    CHECK(std::string(e.what()).find("generator 1") != std::string::npos);
  }
  CHECK_THROWS_AS(FreeGroupRep(space, {}), ParameterError);
  const FreeGroupRep rep(space, {good});
  CHECK_THROWS_AS(rep.letter_image(2), ParameterError);
}

TEST_CASE("reductive block form") {
  const QuadraticSpace space1(1);
  const auto id = check_reductive_block_form(space1, Matrix::Identity(3, 3));
  CHECK(id.ok());
  CHECK(id.block == Matrix::Identity(1, 1));
  const auto boost = check_reductive_block_form(space1, diag({2, 1, 0.5}));
  CHECK(boost.ok());
  CHECK(boost.block(0, 0) == doctest::Approx(2.0));

  const QuadraticSpace space2(2);
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  const Matrix a = reductive_element(m);
  CHECK(form_defect(space2, a) < 1e-15);
  const auto recovered = check_reductive_block_form(space2, a);
  CHECK(recovered.ok());
  CHECK(max_abs(recovered.block - m) < 1e-15);
  CHECK(max_abs(reductive_element(recovered.block) - a) < 1e-15);

  SeededStream stream(3, 0);
  CHECK(check_reductive_block_form(space2, random_group_element(space2, stream)).defect ==
        BlockFormDefect::not_stabilizing);
  CHECK(check_reductive_block_form(space2, flip(2)).defect == BlockFormDefect::non_positive_determinant);
  CHECK_THROWS_AS(check_reductive_block_form(space2, diag({1, 1, -1, 1, 1})), MembershipError);

  for (int trial = 0; trial < 50; ++trial) {
    Matrix block(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) block(i, k) = stream.normal() + (i == k ? 3.0 : 0.0);
    if (block.determinant() < 0) block.col(0) *= -1.0;
    const Matrix g = reductive_element(block);
    const auto form = check_reductive_block_form(QuadraticSpace(3), g);
    CHECK(form.ok());
    CHECK(max_abs(reductive_element(form.block) - g) < 1e-12);
  }
}
