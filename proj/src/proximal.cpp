#include "margulis/proximal.hpp"

#include "margulis/errors.hpp"
#include "margulis/sampling.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace margulis {

std::vector<double> eigenvalue_moduli(const Matrix& a) {
  Eigen::EigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigenvalue iteration did not converge");
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

namespace {

thread_local double select_threshold = 1.0;
thread_local bool select_above = true;

lapack_logical select_by_modulus(const double* re, const double* im) {
  const double m = std::hypot(*re, *im);
  return select_above ? m > select_threshold : m < select_threshold;
}

// Orthonormal basis of the invariant subspace for eigenvalues on one side of
// `threshold`, as the leading Schur vectors of a reordered real Schur form.
Matrix schur_invariant_subspace(const Matrix& a, double threshold, bool above, int expected_dim) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  Matrix vs(n, n);
  std::vector<double> wr(n), wi(n);
  lapack_int sdim = 0;
  select_threshold = threshold;
  select_above = above;
  const lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'S', select_by_modulus, n, work.data(), n, &sdim,
                                        wr.data(), wi.data(), vs.data(), n);
  if (info != 0) throw NumericalFailure("Schur decomposition failed (info " + std::to_string(info) + ")");
  if (sdim != expected_dim)
    throw NotProximal("invariant subspace has dimension " + std::to_string(sdim) + ", expected " +
                      std::to_string(expected_dim));
  return vs.leftCols(expected_dim);
}

std::string moduli_text(const std::vector<double>& moduli) {
  std::ostringstream out;
  out.precision(6);
  for (std::size_t i = 0; i < moduli.size(); ++i) out << (i ? ", " : "") << moduli[i];
  return out.str();
}

}  // namespace

SpectralSplit spectral_split(const QuadraticSpace& space, const Matrix& a, double tol) {
  const int n = space.n();
  if (a.rows() != space.dim() || a.cols() != space.dim()) throw ParameterError("matrix has wrong dimension");
  if (!a.allFinite()) throw NotProximal("matrix has non-finite entries");
  std::vector<double> moduli = eigenvalue_moduli(a);
  // The middle modulus is 1 exactly for members; only the outer blocks are
  // tested, since rounding moves it off 1 for badly conditioned words.
  if (!(moduli[n - 1] > 1.0 + tol) || !(moduli[n + 1] < 1.0 - tol))
    throw NotProximal("eigenvalue moduli do not split " + std::to_string(n) + " + 1 + " + std::to_string(n) +
                      ": " + moduli_text(moduli));
  const double gap = std::log(moduli[n - 1]);
  if (!(gap > tol)) throw NotProximal("spectral gap below tolerance");

  const Matrix plus = schur_invariant_subspace(a, std::sqrt(moduli[n - 1]), true, n);
  const Matrix minus = schur_invariant_subspace(a, std::sqrt(moduli[n + 1]), false, n);
  const double iso_tol = tol * std::max(1.0, a.cwiseAbs().maxCoeff());
  IsotropicFrame attracting(space, SubspaceFrame(plus, tol), iso_tol);
  IsotropicFrame repelling(space, SubspaceFrame(minus, tol), iso_tol);
  Vector neutral = neutral_vector(space, attracting, repelling, tol);
  return SpectralSplit{std::move(attracting), std::move(repelling), std::move(neutral), gap, std::move(moduli)};
}

double transversality_pairing(const QuadraticSpace& space, const Matrix& first, const Matrix& second) {
  const Matrix q1 = orthonormal_basis(first, 1e-14);
  const Matrix q2 = orthonormal_basis(second, 1e-14);
  Eigen::JacobiSVD<Matrix> svd(q1.transpose() * space.form() * q2);
  return svd.singularValues().minCoeff();
}

double grassmann_distance(const Matrix& first, const Matrix& second) {
  return largest_principal_angle(first, second);
}

Vector neutral_vector(const QuadraticSpace& space, const IsotropicFrame& plus, const IsotropicFrame& minus,
                      double tol) {
  const int n = space.n();
  const Matrix qp = plus.frame().orthonormal();
  const Matrix qm = minus.frame().orthonormal();
  if (!(transversality_pairing(space, qp, qm) > tol)) throw SignatureError("isotropic pair is not transverse");

  Matrix both(space.dim(), 2 * n);
  both << qp, qm;
  Vector v = kernel_basis(both.transpose() * space.form(), 1, tol).col(0);
  const double norm2 = space.b(v, v);
  if (!(norm2 > tol)) throw NumericalFailure("neutral line is not spacelike");
  v /= std::sqrt(norm2);

  Matrix basis(space.dim(), space.dim());
  basis << plus.positive_basis(), v, minus.positive_basis();
  if (basis.partialPivLu().determinant() < 0) v = -v;
  return v;
}

Matrix degenerate_part(const QuadraticSpace& space, const SubspaceFrame& frame) {
  const int n = space.n();
  if (frame.dim() != n + 1 || signature(space, frame) != Signature{n, 1, 0})
    throw SignatureError("frame is not of type (n,1,0)");
  const Matrix q = frame.orthonormal();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(space.gram(q));
  std::vector<Eigen::Index> order(n + 1);
  for (int i = 0; i <= n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(eig.eigenvalues()(i)) < std::abs(eig.eigenvalues()(j));
  });
  Matrix radical(q.rows(), n);
  for (int i = 0; i < n; ++i) radical.col(i) = q * eig.eigenvectors().col(order[i]);
  return radical;
}

TransversalityVerdict transverse(const QuadraticSpace& space, const SubspaceFrame& lin1, const SubspaceFrame& lin2,
                                 double tol) {
  const Matrix w1 = degenerate_part(space, lin1);
  const Matrix w2 = degenerate_part(space, lin2);
  const Matrix w2_perp = b_orthogonal_complement(space, SubspaceFrame(w2, tol)).orthonormal();
  Matrix assembled(space.dim(), space.dim());
  assembled << orthonormal_basis(w1, tol), w2_perp;
  Eigen::JacobiSVD<Matrix> svd(assembled);
  TransversalityVerdict verdict;
  verdict.margin = svd.singularValues().minCoeff();
  verdict.transverse = verdict.margin > tol;
  return verdict;
}

TransversalityVerdict transverse(const QuadraticSpace& space, const AffineFlagPair& pair, double tol) {
  return transverse(space, pair.lin1, pair.lin2, tol);
}

ProximalityCertificate is_r_eps_proximal(const QuadraticSpace& space, const Matrix& g, double r, double eps,
                                         int samples, std::uint64_t seed, double tol) {
  if (!(r > 0) || !(eps > 0) || !(eps < r / 2))
    throw ParameterError("proximality needs 0 < eps < r/2");
  if (samples < 1) throw ParameterError("proximality needs at least one sample");
  const SpectralSplit split = spectral_split(space, g, tol);

  ProximalityCertificate cert;
  cert.r = r;
  cert.eps = eps;
  cert.seed = seed;
  cert.attracting = split.attracting.frame().orthonormal();
  cert.repelling = split.repelling.frame().orthonormal();
  cert.separation = nontransverse_distance(space, cert.attracting, cert.repelling);
  cert.separated = cert.separation >= r - tol;

  const int max_attempts = 100 * samples + 1000;
  double margin = std::numeric_limits<double>::infinity();
  int accepted = 0;
  int index = 0;
  for (; accepted < samples && index < max_attempts; ++index) {
    SeededStream stream(seed, static_cast<std::uint64_t>(index));
    const Matrix x = random_isotropic_frame(space, stream);
    if (nontransverse_distance(space, x, cert.repelling) < eps) continue;
    ++accepted;
    margin = std::min(margin, eps - grassmann_distance(g * x, cert.attracting));
  }
  cert.samples = accepted;
  cert.attempts = index;
  if (accepted < samples)
    throw InsufficientSamples("only " + std::to_string(accepted) + " of " + std::to_string(samples) +
                              " samples fell outside N_eps(nt(x-))");
  cert.margin_attract = margin;
  cert.contracted = margin > 0;
  return cert;
}

AmsCover ams_cover(const FreeGroupRep& rep, const AmsParams& params) {
  if (params.search < 0) throw ParameterError("search radius must be non-negative");
  const QuadraticSpace& space = rep.space();
  std::vector<ReducedWord> candidates{ReducedWord{}};
  if (params.search >= 1) {
    auto extra = word_ball(rep.rank(), params.search);
    candidates.insert(candidates.end(), extra.begin(), extra.end());
  }
  std::vector<Matrix> candidate_images;
  candidate_images.reserve(candidates.size());
  for (const auto& s : candidates) candidate_images.push_back(rep.evaluate(s).linear);

  AmsCover cover;
  for (const auto& word : word_ball(rep.rank(), params.ball)) {
    const Matrix image = rep.evaluate(word).linear;
    bool found = false;
    for (std::size_t c = 0; c < candidates.size() && !found; ++c) {
      try {
        const auto cert = is_r_eps_proximal(space, candidate_images[c] * image, params.r, params.eps,
                                            params.samples, params.seed, rep.tolerances().tol);
        if (cert.passed()) {
          cover.assignment.push_back({word, candidates[c]});
          found = true;
        }
      } catch (const NotProximal&) {
      } catch (const InsufficientSamples&) {
      }
    }
    if (!found) cover.failures.push_back(word);
  }
  for (const auto& a : cover.assignment) cover.used.push_back(a.correction);
  std::sort(cover.used.begin(), cover.used.end());
  cover.used.erase(std::unique(cover.used.begin(), cover.used.end()), cover.used.end());
  return cover;
}

}  // namespace margulis
