#include "margulis/anosov.hpp"

#include "margulis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace margulis {

LimitSampling limit_map_samples(const FreeGroupRep& rep, int ball) {
  LimitSampling out;
  for (const auto& word : word_ball(rep.rank(), ball)) {
    try {
      SpectralSplit split = spectral_split(rep.space(), rep.evaluate(word).linear, rep.tolerances().tol);
      out.samples.push_back({word, std::move(split.attracting), std::move(split.repelling), split.gap});
    } catch (const NotProximal& e) {
      out.skipped.push_back({word, e.what()});
    }
  }
  return out;
}

TransversalityMatrix transversality_matrix(const QuadraticSpace& space, const std::vector<LimitSample>& samples,
                                           double same_point_angle) {
  const auto count = static_cast<Eigen::Index>(samples.size());
  TransversalityMatrix out;
  out.margins = Matrix::Constant(count, count, std::numeric_limits<double>::quiet_NaN());
  out.min_margin = std::numeric_limits<double>::infinity();
  std::vector<Matrix> plus, minus;
  for (const auto& s : samples) {
    plus.push_back(s.attracting.frame().orthonormal());
    minus.push_back(s.repelling.frame().orthonormal());
  }
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = i + 1; j < count; ++j) {
      if (grassmann_distance(plus[i], plus[j]) < same_point_angle &&
          grassmann_distance(minus[i], minus[j]) < same_point_angle) {
        ++out.excluded_pairs;
        continue;
      }
      const double m = transversality_pairing(space, plus[i], plus[j]);
      out.margins(i, j) = m;
      out.margins(j, i) = m;
      out.min_margin = std::min(out.min_margin, m);
      ++out.admissible_pairs;
    }
  }
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("line fit needs at least two points");
  const double count = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
  return fit;
}

bool ContractionTrace::slopes_match_gap(double relative) const {
  return plus.slope >= gap * (1.0 - relative) && minus.slope <= -gap * (1.0 - relative);
}

ContractionTrace contraction_trace(const QuadraticSpace& space, const Matrix& a, int kmax, double tol) {
  if (kmax < 3) throw ParameterError("contraction trace needs kmax >= 3");
  const SpectralSplit split = spectral_split(space, a, tol);
  const Matrix qp = split.attracting.frame().orthonormal();
  const Matrix qm = split.repelling.frame().orthonormal();
  const Matrix restricted_plus = qp.transpose() * a * qp;
  const Matrix restricted_minus = qm.transpose() * a * qm;

  ContractionTrace trace;
  trace.gap = split.gap;
  Matrix power_plus = Matrix::Identity(space.n(), space.n());
  Matrix power_minus = power_plus;
  std::vector<double> ks;
  for (int k = 1; k <= kmax; ++k) {
    power_plus = power_plus * restricted_plus;
    power_minus = power_minus * restricted_minus;
    Eigen::JacobiSVD<Matrix> sp(power_plus), sm(power_minus);
    trace.k_values.push_back(k);
    ks.push_back(k);
    trace.log_sv_plus.push_back(std::log(sp.singularValues().minCoeff()));
    trace.log_sv_minus.push_back(std::log(sm.singularValues().maxCoeff()));
  }
  trace.plus = fit_line(ks, trace.log_sv_plus);
  trace.minus = fit_line(ks, trace.log_sv_minus);
  return trace;
}

NeutralSplitting splitting_at(const QuadraticSpace& space, const IsotropicFrame& plus, const IsotropicFrame& minus,
                              double tol) {
  NeutralSplitting out;
  out.line = neutral_vector(space, plus, minus, tol);
  out.plus = plus.columns();
  out.minus = minus.columns();
  Matrix assembled(space.dim(), space.dim());
  assembled << plus.frame().orthonormal(), out.line.normalized(), minus.frame().orthonormal();
  Eigen::JacobiSVD<Matrix> svd(assembled);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > tol)) throw SignatureError("splitting does not span R^{2n+1}");
  out.condition = s(0) / s(s.size() - 1);
  return out;
}

std::string to_string(ScorecardVerdict verdict) {
  switch (verdict) {
    case ScorecardVerdict::consistent_affine_anosov: return "consistent_affine_anosov";
    case ScorecardVerdict::inconsistent: return "inconsistent";
    case ScorecardVerdict::insufficient_evidence: return "insufficient_evidence";
  }
  return "unknown";
}

Scorecard affine_anosov_scorecard(const FreeGroupRep& rep, const ScorecardConfig& config) {
  Scorecard card;
  card.config = config;
  const QuadraticSpace& space = rep.space();
  const double tol = rep.tolerances().tol;
  std::vector<std::string> insufficient;
  std::vector<std::string> inconsistent;

  const LimitSampling sampling = limit_map_samples(rep, config.ball);
  card.proximal_words = sampling.samples.size();
  card.skipped = sampling.skipped;
  for (const auto& s : sampling.skipped) {
    if (s.word.length() == 1) insufficient.push_back("non-proximal generator " + s.word.human());
  }
  if (!sampling.skipped.empty())
    insufficient.push_back(std::to_string(sampling.skipped.size()) + " non-proximal words in the ball");

  card.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& s : sampling.samples) card.min_gap = std::min(card.min_gap, s.gap);
  const TransversalityMatrix matrix = transversality_matrix(space, sampling.samples, config.same_point_angle);
  card.min_transversality = matrix.min_margin;
  card.admissible_pairs = matrix.admissible_pairs;
  if (matrix.admissible_pairs == 0) {
    insufficient.push_back("no admissible pairs of boundary points");
  } else if (!(matrix.min_margin > config.min_margin)) {
    inconsistent.push_back("transversality margin below threshold");
  }

  for (int g = 1; g <= rep.rank(); ++g) {
    for (int letter : {g, -g}) {
      try {
        card.traces.push_back({letter, contraction_trace(space, rep.letter_image(letter).linear, config.kmax, tol)});
      } catch (const NotProximal&) {
      }
    }
  }
  for (const auto& t : card.traces) {
    card.max_contraction_residual = std::max(card.max_contraction_residual, t.trace.max_residual());
    card.slopes_ok = card.slopes_ok && t.trace.slopes_match_gap();
  }
  if (!card.slopes_ok) inconsistent.push_back("contraction slopes do not match the spectral gap");
  if (card.max_contraction_residual > config.max_residual)
    inconsistent.push_back("contraction residual above threshold");

  card.spectrum = spectrum(rep, config.ball);
  switch (card.spectrum.verdict.kind) {
    case SpectrumVerdictKind::mixed:
      inconsistent.push_back("mixed signs: " + card.spectrum.verdict.positive_witness->human() + " > 0, " +
                             card.spectrum.verdict.negative_witness->human() + " < 0");
      break;
    case SpectrumVerdictKind::degenerate:
      if (card.spectrum.verdict.zero_witness) {
        inconsistent.push_back("zero Margulis invariant at " + card.spectrum.verdict.zero_witness->human());
      } else {
        insufficient.push_back("no proximal words for the sign test");
      }
      break;
    default:
      break;
  }

  if (config.run_ams) {
    card.ams = ams_cover(rep, config.ams);
    card.ams_ran = true;
  }

  if (!insufficient.empty()) {
    card.verdict = ScorecardVerdict::insufficient_evidence;
    card.reasons = insufficient;
  } else if (!inconsistent.empty()) {
    card.verdict = ScorecardVerdict::inconsistent;
    card.reasons = inconsistent;
  } else {
    card.verdict = ScorecardVerdict::consistent_affine_anosov;
  }
  return card;
}

}  // namespace margulis
