#pragma once

#include "margulis/affine_group.hpp"
#include "margulis/invariants.hpp"
#include "margulis/proximal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace margulis {

/// Fixed points of a proximal group element: samples of the boundary map at
/// (gamma-, gamma+).
struct LimitSample {
  ReducedWord word;
  IsotropicFrame attracting;
  IsotropicFrame repelling;
  double gap = 0.0;
};

struct LimitSampling {
  std::vector<LimitSample> samples;
  std::vector<SkippedWord> skipped;
};

LimitSampling limit_map_samples(const FreeGroupRep& rep, int ball);

struct TransversalityMatrix {
  /// margins(i, j) = transversality_pairing(attracting_i, attracting_j);
  /// NaN on the diagonal and for excluded same-point pairs.
  Matrix margins;
  double min_margin = 0.0;  // +inf when no pair is admissible
  std::size_t admissible_pairs = 0;
  std::size_t excluded_pairs = 0;
};

/// Pairs whose attracting and repelling frames both lie within
/// `same_point_angle` are the same boundary point and are excluded.
TransversalityMatrix transversality_matrix(const QuadraticSpace& space, const std::vector<LimitSample>& samples,
                                           double same_point_angle = 1e-6);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |y_k - (slope k + intercept)|
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ContractionTrace {
  std::vector<int> k_values;
  std::vector<double> log_sv_plus;   // min log singular value of A^k on V+
  std::vector<double> log_sv_minus;  // max log singular value of A^k on V-
  LinearFit plus;
  LinearFit minus;
  double gap = 0.0;

  /// Slopes at least gap (1 - 1e-6) on V+ and at most -gap (1 - 1e-6) on V-.
  bool slopes_match_gap(double relative = 1e-6) const;
  double max_residual() const { return std::max(plus.residual, minus.residual); }
};

/// Powers of A restricted to Euclidean-orthonormal bases of V+ and V-, fixed once.
ContractionTrace contraction_trace(const QuadraticSpace& space, const Matrix& a, int kmax, double tol = kDefaultTol);

struct NeutralSplitting {
  Matrix plus;
  Vector line;
  Matrix minus;
  /// Condition number of [plus | line | minus] (orthonormalized blocks).
  double condition = 0.0;
};

/// V+ ⊕ L ⊕ V- with L = (V+)^perp ∩ (V-)^perp spanned by the neutral vector.
NeutralSplitting splitting_at(const QuadraticSpace& space, const IsotropicFrame& plus, const IsotropicFrame& minus,
                              double tol = kDefaultTol);

struct ScorecardConfig {
  int ball = 3;
  double min_margin = 1e-6;
  double max_residual = 1e-6;
  int kmax = 20;
  double same_point_angle = 1e-6;
  AmsParams ams{};
  bool run_ams = true;
};

enum class ScorecardVerdict { consistent_affine_anosov, inconsistent, insufficient_evidence };

std::string to_string(ScorecardVerdict verdict);

struct GeneratorTrace {
  int letter = 0;
  ContractionTrace trace;
};

struct Scorecard {
  ScorecardConfig config;
  // (a) linear Anosov evidence on periodic orbits
  std::size_t proximal_words = 0;
  std::vector<SkippedWord> skipped;
  double min_gap = 0.0;
  double min_transversality = 0.0;
  std::size_t admissible_pairs = 0;
  // (b) contraction on generators and their inverses
  std::vector<GeneratorTrace> traces;
  double max_contraction_residual = 0.0;
  bool slopes_ok = true;
  // (c) sign test
  SpectrumReport spectrum;
  // (d) AMS cover
  bool ams_ran = false;
  AmsCover ams;

  ScorecardVerdict verdict = ScorecardVerdict::insufficient_evidence;
  std::vector<std::string> reasons;
};

/// Numerical evidence (not proof) for the affine Anosov property of rho.
Scorecard affine_anosov_scorecard(const FreeGroupRep& rep, const ScorecardConfig& config);

}  // namespace margulis
