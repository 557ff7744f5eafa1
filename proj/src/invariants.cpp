#include "margulis/invariants.hpp"

#include "margulis/errors.hpp"

#include <algorithm>
#include <cmath>

namespace margulis {

double margulis_invariant(const QuadraticSpace& space, const AffineIsometry& g, double tol) {
  const SpectralSplit split = spectral_split(space, g.linear, tol);
  return space.b(g.translation, split.neutral);
}

double translation_length_proxy(const QuadraticSpace& space, const Matrix& a, double tol) {
  return std::log(spectral_split(space, a, tol).eigenvalue_moduli.front());
}

std::string to_string(SpectrumVerdictKind kind) {
  switch (kind) {
    case SpectrumVerdictKind::uniform_positive: return "uniform_positive";
    case SpectrumVerdictKind::uniform_negative: return "uniform_negative";
    case SpectrumVerdictKind::mixed: return "mixed";
    case SpectrumVerdictKind::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string to_string(Sign sign) {
  switch (sign) {
    case Sign::positive: return "+";
    case Sign::negative: return "-";
    case Sign::zero: return "0";
  }
  return "?";
}

Sign classify(double alpha, const Vector& translation, double zero_tol) {
  if (std::abs(alpha) <= zero_tol * (1.0 + translation.norm())) return Sign::zero;
  return alpha > 0 ? Sign::positive : Sign::negative;
}

SpectrumVerdict spectrum_verdict(const std::vector<WordInvariant>& entries) {
  SpectrumVerdict verdict;
  for (const auto& e : entries) {
    if (e.sign == Sign::zero && !verdict.zero_witness) verdict.zero_witness = e.word;
    if (e.sign == Sign::positive && !verdict.positive_witness) verdict.positive_witness = e.word;
    if (e.sign == Sign::negative && !verdict.negative_witness) verdict.negative_witness = e.word;
  }
  if (verdict.positive_witness && verdict.negative_witness) {
    verdict.kind = SpectrumVerdictKind::mixed;
  } else if (entries.empty() || verdict.zero_witness) {
    verdict.kind = SpectrumVerdictKind::degenerate;
  } else if (verdict.positive_witness) {
    verdict.kind = SpectrumVerdictKind::uniform_positive;
  } else {
    verdict.kind = SpectrumVerdictKind::uniform_negative;
  }
  return verdict;
}

SpectrumReport spectrum(const FreeGroupRep& rep, int ball) { return spectrum(rep, ball, rep.tolerances().zero_tol); }

SpectrumReport spectrum(const FreeGroupRep& rep, int ball, double zero_tol) {
  SpectrumReport report;
  report.label = rep.label();
  report.ball = ball;
  const QuadraticSpace& space = rep.space();
  for (const auto& word : word_ball(rep.rank(), ball)) {
    const AffineIsometry g = rep.evaluate(word);
    try {
      const SpectralSplit split = spectral_split(space, g.linear, rep.tolerances().tol);
      WordInvariant entry;
      entry.word = word;
      entry.alpha = space.b(g.translation, split.neutral);
      entry.length_proxy = std::log(split.eigenvalue_moduli.front());
      entry.normalized = entry.alpha / entry.length_proxy;
      entry.gap = split.gap;
      entry.sign = classify(entry.alpha, g.translation, zero_tol);
      report.entries.push_back(std::move(entry));
    } catch (const NotProximal& e) {
      report.skipped.push_back({word, e.what()});
    }
  }
  report.verdict = spectrum_verdict(report.entries);
  return report;
}

double power_additivity_check(const QuadraticSpace& space, const AffineIsometry& g, int kmax, double zero_tol,
                              double tol) {
  if (kmax < 2) throw ParameterError("power additivity needs kmax >= 2");
  const double alpha = margulis_invariant(space, g, tol);
  if (classify(alpha, g.translation, zero_tol) == Sign::zero)
    throw ParameterError("Margulis invariant is zero; relative power deviation undefined");
  double worst = 0.0;
  AffineIsometry gk = g;
  for (int k = 2; k <= kmax; ++k) {
    gk = compose(gk, g);
    const double alpha_k = margulis_invariant(space, gk, tol);
    worst = std::max(worst, std::abs(alpha_k - k * alpha) / (k * std::abs(alpha)));
  }
  return worst;
}

double inverse_symmetry_probe(const QuadraticSpace& space, const AffineIsometry& g, double zero_tol, double tol) {
  const double alpha = margulis_invariant(space, g, tol);
  if (classify(alpha, g.translation, zero_tol) == Sign::zero)
    throw ParameterError("Margulis invariant is zero; inverse ratio undefined");
  return margulis_invariant(space, inverse(space, g), tol) / alpha;
}

}  // namespace margulis
