#pragma once

#include "margulis/affine_group.hpp"
#include "margulis/proximal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace margulis {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

/// alpha(g) = b(u, nu) for the neutral vector nu of the linear part.
double margulis_invariant(const QuadraticSpace& space, const AffineIsometry& g, double tol = kDefaultTol);

/// log of the top eigenvalue modulus. Stands in for the translation length
/// on the flow space; only its positivity and homogeneity under powers are used.
double translation_length_proxy(const QuadraticSpace& space, const Matrix& a, double tol = kDefaultTol);

struct WordInvariant {
  ReducedWord word;
  double alpha = 0.0;
  double length_proxy = 0.0;
  double normalized = 0.0;
  double gap = 0.0;
  Sign sign = Sign::zero;
};

enum class SpectrumVerdictKind { uniform_positive, uniform_negative, mixed, degenerate };

struct SpectrumVerdict {
  SpectrumVerdictKind kind = SpectrumVerdictKind::degenerate;
  std::optional<ReducedWord> positive_witness;
  std::optional<ReducedWord> negative_witness;
  std::optional<ReducedWord> zero_witness;
};

struct SkippedWord {
  ReducedWord word;
  std::string reason;
};

struct SpectrumReport {
  std::string label;
  int ball = 0;
  std::vector<WordInvariant> entries;  // shortlex word order
  SpectrumVerdict verdict;
  std::vector<SkippedWord> skipped;
};

std::string to_string(SpectrumVerdictKind kind);
std::string to_string(Sign sign);

/// Sign of alpha under the zero test |alpha| <= zero_tol * (1 + |u|).
Sign classify(double alpha, const Vector& translation, double zero_tol);

/// Verdict from a sign multiset: both signs -> mixed (first positive and first
/// negative word as witnesses); else any zero -> degenerate; otherwise uniform.
/// Mixed and degenerate certify non-properness; uniform is evidence only.
SpectrumVerdict spectrum_verdict(const std::vector<WordInvariant>& entries);

/// Margulis invariants over the word ball; non-proximal words are skipped.
SpectrumReport spectrum(const FreeGroupRep& rep, int ball);
SpectrumReport spectrum(const FreeGroupRep& rep, int ball, double zero_tol);

/// max_{2<=k<=kmax} |alpha(g^k) - k alpha(g)| / (k |alpha(g)|). Throws
/// ParameterError when alpha(g) fails the zero test.
double power_additivity_check(const QuadraticSpace& space, const AffineIsometry& g, int kmax,
                              double zero_tol = 1e-10, double tol = kDefaultTol);

/// alpha(g^{-1}) / alpha(g).
double inverse_symmetry_probe(const QuadraticSpace& space, const AffineIsometry& g, double zero_tol = 1e-10,
                              double tol = kDefaultTol);

}  // namespace margulis
