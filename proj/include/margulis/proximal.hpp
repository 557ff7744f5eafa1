#pragma once

#include "margulis/affine_group.hpp"
#include "margulis/frame.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace margulis {

/// R^{2n+1} = V+ ⊕ L ⊕ V- for a proximal element of SO^0(n+1,n).
struct SpectralSplit {
  IsotropicFrame attracting;  // generalized eigenspace for |lambda| > 1
  IsotropicFrame repelling;   // generalized eigenspace for |lambda| < 1
  Vector neutral;             // neutral_vector(attracting, repelling)
  double gap = 0.0;           // min log|lambda| over V+
  std::vector<double> eigenvalue_moduli;  // descending
};

/// Schur-based splitting. Throws NotProximal unless exactly n moduli exceed
/// 1 + tol, exactly n are below 1 - tol, and the gap exceeds tol.
SpectralSplit spectral_split(const QuadraticSpace& space, const Matrix& a, double tol = kDefaultTol);

/// Eigenvalue moduli of A in descending order.
std::vector<double> eigenvalue_moduli(const Matrix& a);

/// The b-unit vector v spanning (V+)^perp ∩ (V-)^perp with
/// (positive basis of V+, v, positive basis of V-) a positive basis of R^{2n+1}.
Vector neutral_vector(const QuadraticSpace& space, const IsotropicFrame& plus, const IsotropicFrame& minus,
                      double tol = kDefaultTol);

/// Smallest singular value of Q1^T J Q2 for Euclidean-orthonormal bases; zero
/// exactly when the two maximal isotropics are not transverse.
double transversality_pairing(const QuadraticSpace& space, const Matrix& first, const Matrix& second);

/// Distance proxy from x to nt(x-), the maximal isotropics not transverse to x-.
inline double nontransverse_distance(const QuadraticSpace& space, const Matrix& x, const Matrix& x_minus) {
  return transversality_pairing(space, x, x_minus);
}

/// Largest principal angle between the spans; a metric on the isotropic Grassmannian.
double grassmann_distance(const Matrix& first, const Matrix& second);

/// Pair of affine subspaces of type (n,1,0): base points and linear parts.
struct AffineFlagPair {
  Vector base1, base2;
  SubspaceFrame lin1, lin2;
};

struct TransversalityVerdict {
  bool transverse = false;
  /// Smallest singular value of [orth(W1) | orth(W2^perp)].
  double margin = 0.0;
};

/// Radical (degenerate directions) of an (n,1,0) frame.
Matrix degenerate_part(const QuadraticSpace& space, const SubspaceFrame& frame);

/// Transversality of two (n,1,0) subspaces: R^{2n+1} = W1 ⊕ W2^perp for their
/// isotropic radicals W1, W2. Throws SignatureError on wrong input type.
TransversalityVerdict transverse(const QuadraticSpace& space, const SubspaceFrame& lin1, const SubspaceFrame& lin2,
                                 double tol = kDefaultTol);
TransversalityVerdict transverse(const QuadraticSpace& space, const AffineFlagPair& pair, double tol = kDefaultTol);

struct ProximalityCertificate {
  double r = 0.0;
  double eps = 0.0;
  Matrix attracting;  // x+
  Matrix repelling;   // x-
  /// d(x+, nt(x-)).
  double separation = 0.0;
  /// min over accepted samples of eps - d(g x, x+).
  double margin_attract = 0.0;
  int samples = 0;
  int attempts = 0;
  std::uint64_t seed = 0;
  bool separated = false;
  bool contracted = false;

  bool passed() const { return separated && contracted; }
};

/// Monte Carlo evidence that g maps the complement of N_eps(nt(x-)) into
/// N_eps(x+) and that d(x+, nt(x-)) >= r. Sample i draws from
/// SeededStream(seed, i). Throws ParameterError unless 0 < eps < r/2 and
/// samples >= 1; NotProximal from spectral_split; InsufficientSamples when
/// too few draws land outside N_eps(nt(x-)).
ProximalityCertificate is_r_eps_proximal(const QuadraticSpace& space, const Matrix& g, double r, double eps,
                                         int samples, std::uint64_t seed, double tol = kDefaultTol);

struct AmsAssignment {
  ReducedWord word;
  ReducedWord correction;
};

struct AmsCover {
  /// Distinct correcting words actually used, shortlex order.
  std::vector<ReducedWord> used;
  std::vector<AmsAssignment> assignment;
  std::vector<ReducedWord> failures;
};

struct AmsParams {
  double r = 0.4;
  double eps = 0.1;
  int ball = 2;
  int search = 1;
  int samples = 200;
  std::uint64_t seed = 1;
};

/// For each word g of the ball, the first s (empty word first, then shortlex
/// up to length `search`) with rho(s) rho(g) (r, eps)-proximal.
AmsCover ams_cover(const FreeGroupRep& rep, const AmsParams& params);

}  // namespace margulis
