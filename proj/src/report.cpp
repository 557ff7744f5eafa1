#include "margulis/report.hpp"

#include "margulis/errors.hpp"
#include "margulis/rep_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace margulis {

using ordered_json = nlohmann::ordered_json;

Analysis parse_analysis(std::string_view name) {
  if (name == "check") return Analysis::check;
  if (name == "spectrum") return Analysis::spectrum;
  if (name == "proximality") return Analysis::proximality;
  if (name == "scorecard") return Analysis::scorecard;
  throw ParameterError("unknown analysis '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "svg") return Format::svg;
  throw ParameterError("unknown format '" + std::string(name) + "'");
}

std::string to_string(Analysis analysis) {
  switch (analysis) {
    case Analysis::check: return "check";
    case Analysis::spectrum: return "spectrum";
    case Analysis::proximality: return "proximality";
    case Analysis::scorecard: return "scorecard";
  }
  return "unknown";
}

void validate(const ReportParams& p) {
  if (p.ball < 1) throw ParameterError("--ball must be at least 1");
  if (p.ams_ball < 1) throw ParameterError("--ams-ball must be at least 1");
  if (p.search < 1) throw ParameterError("--search must be at least 1");
  if (p.samples < 1) throw ParameterError("--samples must be at least 1");
  if (p.kmax < 3) throw ParameterError("--kmax must be at least 3");
  if (!(p.r > 0) || !(p.eps > 0)) throw ParameterError("--r and --eps must be positive");
  if (!(p.eps < p.r / 2)) throw ParameterError("--eps must be smaller than --r / 2");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

namespace {

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json word_json(const ReducedWord& w) { return {{"letters", w.letters()}, {"human", w.human()}}; }

ordered_json optional_word(const std::optional<ReducedWord>& w) {
  if (!w) return nullptr;
  return word_json(*w);
}

ordered_json params_json(const ReportParams& p, const Tolerances& t) {
  ordered_json j;
  j["ball"] = p.ball;
  j["r"] = p.r;
  j["eps"] = p.eps;
  j["samples"] = p.samples;
  j["seed"] = p.seed;
  j["search"] = p.search;
  j["ams_ball"] = p.ams_ball;
  j["kmax"] = p.kmax;
  j["min_margin"] = p.min_margin;
  j["max_residual"] = p.max_residual;
  j["tol"] = t.tol;
  j["zero_tol"] = t.zero_tol;
  return j;
}

ordered_json generators_json(const FreeGroupRep& rep) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < rep.rank(); ++i) {
    const auto& g = rep.generators()[i];
    const auto verdict = in_identity_component(rep.space(), g.linear, rep.tolerances().tol);
    ordered_json j;
    j["index"] = i;
    j["word"] = word_json(ReducedWord({i + 1}));
    j["form_defect"] = form_defect(rep.space(), g.linear);
    j["compressed_determinant"] = verdict.compressed_determinant;
    j["identity_component"] = verdict.in_identity_component;
    try {
      const auto split = spectral_split(rep.space(), g.linear, rep.tolerances().tol);
      j["proximal"] = true;
      j["gap"] = split.gap;
      j["eigenvalue_moduli"] = split.eigenvalue_moduli;
    } catch (const NotProximal& e) {
      j["proximal"] = false;
      j["reason"] = e.what();
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json spectrum_json(const FreeGroupRep& rep, const SpectrumReport& s) {
  ordered_json j;
  j["ball"] = s.ball;
  j["words"] = s.entries.size() + s.skipped.size();
  j["verdict"] = to_string(s.verdict.kind);
  j["witnesses"] = {{"positive", optional_word(s.verdict.positive_witness)},
                    {"negative", optional_word(s.verdict.negative_witness)},
                    {"zero", optional_word(s.verdict.zero_witness)}};
  j["note"] = "mixed or degenerate signs certify that the action is not proper; uniform signs are evidence only";
  double min_abs = std::numeric_limits<double>::infinity();
  ordered_json entries = ordered_json::array();
  for (const auto& e : s.entries) {
    min_abs = std::min(min_abs, std::abs(e.normalized));
    ordered_json row;
    row["word"] = e.word.letters();
    row["human"] = e.word.human();
    row["alpha"] = e.alpha;
    row["length_proxy"] = e.length_proxy;
    row["normalized"] = e.normalized;
    row["sign"] = to_string(e.sign);
    row["gap"] = e.gap;
    row["form_defect"] = form_defect(rep.space(), rep.evaluate(e.word).linear);
    entries.push_back(std::move(row));
  }
  j["min_abs_normalized"] = number(min_abs);
  j["entries"] = std::move(entries);
  ordered_json skipped = ordered_json::array();
  for (const auto& k : s.skipped) skipped.push_back({{"word", k.word.letters()}, {"human", k.word.human()}, {"reason", k.reason}});
  j["skipped"] = std::move(skipped);
  return j;
}

ordered_json ams_json(const AmsCover& cover, const AmsParams& p) {
  ordered_json j;
  j["r"] = p.r;
  j["eps"] = p.eps;
  j["ball"] = p.ball;
  j["search"] = p.search;
  j["samples"] = p.samples;
  j["seed"] = p.seed;
  ordered_json used = ordered_json::array();
  for (const auto& w : cover.used) used.push_back(word_json(w));
  j["correcting_set"] = std::move(used);
  ordered_json assignment = ordered_json::array();
  for (const auto& a : cover.assignment)
    assignment.push_back({{"word", a.word.letters()}, {"correction", a.correction.letters()}});
  j["assignment"] = std::move(assignment);
  ordered_json failures = ordered_json::array();
  for (const auto& w : cover.failures) failures.push_back(w.letters());
  j["failures"] = std::move(failures);
  return j;
}

ordered_json certificate_json(const ProximalityCertificate& c) {
  ordered_json j;
  j["separation"] = c.separation;
  j["margin_attract"] = number(c.margin_attract);
  j["samples"] = c.samples;
  j["attempts"] = c.attempts;
  j["seed"] = c.seed;
  j["separated"] = c.separated;
  j["contracted"] = c.contracted;
  j["passed"] = c.passed();
  return j;
}

ordered_json proximality_json(const FreeGroupRep& rep, const ReportParams& p, const AmsParams& ams) {
  ordered_json certs = ordered_json::array();
  for (int g = 1; g <= rep.rank(); ++g) {
    for (int letter : {g, -g}) {
      const ReducedWord w({letter});
      ordered_json j;
      j["word"] = word_json(w);
      try {
        j["certificate"] = certificate_json(
            is_r_eps_proximal(rep.space(), rep.letter_image(letter).linear, p.r, p.eps, p.samples, p.seed,
                              rep.tolerances().tol));
      } catch (const NotProximal& e) {
        j["certificate"] = nullptr;
        j["error"] = std::string("NotProximal: ") + e.what();
      } catch (const InsufficientSamples& e) {
        j["certificate"] = nullptr;
        j["error"] = std::string("InsufficientSamples: ") + e.what();
      }
      certs.push_back(std::move(j));
    }
  }
  ordered_json out;
  out["certificates"] = std::move(certs);
  out["ams_cover"] = ams_json(ams_cover(rep, ams), ams);
  return out;
}

ordered_json trace_json(const GeneratorTrace& t) {
  ordered_json j;
  j["word"] = ReducedWord({t.letter}).letters();
  j["gap"] = t.trace.gap;
  j["slope_plus"] = t.trace.plus.slope;
  j["slope_minus"] = t.trace.minus.slope;
  j["residual_plus"] = t.trace.plus.residual;
  j["residual_minus"] = t.trace.minus.residual;
  j["intercept_plus"] = t.trace.plus.intercept;
  j["intercept_minus"] = t.trace.minus.intercept;
  return j;
}

ordered_json scorecard_json(const Scorecard& card) {
  ordered_json j;
  j["verdict"] = to_string(card.verdict);
  j["reasons"] = card.reasons;
  j["note"] = "numerical evidence from periodic orbits in a word ball, not a proof";
  j["thresholds"] = {{"min_margin", card.config.min_margin},
                     {"max_residual", card.config.max_residual},
                     {"same_point_angle", card.config.same_point_angle},
                     {"kmax", card.config.kmax}};
  j["linear_anosov"] = {{"ball", card.config.ball},
                        {"proximal_words", card.proximal_words},
                        {"skipped_words", card.skipped.size()},
                        {"min_gap", number(card.min_gap)},
                        {"min_transversality", number(card.min_transversality)},
                        {"admissible_pairs", card.admissible_pairs}};
  ordered_json traces = ordered_json::array();
  for (const auto& t : card.traces) traces.push_back(trace_json(t));
  j["contraction"] = {{"max_residual", card.max_contraction_residual},
                      {"slopes_match_gap", card.slopes_ok},
                      {"traces", std::move(traces)}};
  j["sign_test"] = {{"verdict", to_string(card.spectrum.verdict.kind)},
                    {"positive_witness", optional_word(card.spectrum.verdict.positive_witness)},
                    {"negative_witness", optional_word(card.spectrum.verdict.negative_witness)},
                    {"zero_witness", optional_word(card.spectrum.verdict.zero_witness)}};
  if (card.ams_ran) {
    ordered_json used = ordered_json::array();
    for (const auto& w : card.ams.used) used.push_back(word_json(w));
    j["ams_cover"] = {{"correcting_set", std::move(used)},
                      {"covered", card.ams.assignment.size()},
                      {"failures", card.ams.failures.size()}};
  }
  return j;
}

AmsParams ams_params(const ReportParams& p) {
  AmsParams a;
  a.r = p.r;
  a.eps = p.eps;
  a.ball = p.ams_ball;
  a.search = p.search;
  a.samples = std::min(p.samples, 200);
  a.seed = p.seed;
  return a;
}

}  // namespace

ReportDocument run_report(const FreeGroupRep& rep, std::string_view input_bytes, const ReportParams& params,
                          Analysis analysis) {
  validate(params);
  const auto start = std::chrono::steady_clock::now();
  ReportDocument doc;
  auto& body = doc.body;
  body["schema_version"] = kSchemaVersion;
  body["analysis"] = to_string(analysis);
  body["label"] = rep.label();
  body["input_digest"] = "sha256:" + sha256_hex(input_bytes);
  body["n"] = rep.space().n();
  body["rank"] = rep.rank();
  body["length_proxy"] = "log of the largest eigenvalue modulus of the linear part";
  body["parameters"] = params_json(params, rep.tolerances());
  body["generators"] = generators_json(rep);

  switch (analysis) {
    case Analysis::check:
      break;
    case Analysis::spectrum:
      doc.spectrum = spectrum(rep, params.ball);
      doc.has_spectrum = true;
      body["spectrum"] = spectrum_json(rep, doc.spectrum);
      break;
    case Analysis::proximality:
      body["proximality"] = proximality_json(rep, params, ams_params(params));
      break;
    case Analysis::scorecard: {
      ScorecardConfig config;
      config.ball = params.ball;
      config.kmax = params.kmax;
      config.min_margin = params.min_margin;
      config.max_residual = params.max_residual;
      config.ams = ams_params(params);
      const Scorecard card = affine_anosov_scorecard(rep, config);
      doc.spectrum = card.spectrum;
      doc.has_spectrum = true;
      body["spectrum"] = spectrum_json(rep, doc.spectrum);
      body["scorecard"] = scorecard_json(card);
      break;
    }
  }
  doc.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

std::string emit_csv(const SpectrumReport& spectrum) {
  std::string out = "word,alpha,length_proxy,normalized,sign,gap\n";
  for (const auto& e : spectrum.entries) {
    out += '"' + e.word.encoded() + "\"," + format_number(e.alpha) + ',' + format_number(e.length_proxy) + ',' +
           format_number(e.normalized) + ',' + to_string(e.sign) + ',' + format_number(e.gap) + '\n';
  }
  return out;
}

std::string emit_svg(const SpectrumReport& spectrum) {
  constexpr double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  double lo = 0.0, hi = 0.0;
  std::size_t max_len = 1;
  for (const auto& e : spectrum.entries) {
    lo = std::min(lo, e.normalized);
    hi = std::max(hi, e.normalized);
    max_len = std::max(max_len, e.word.length());
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto sx = [&](double len) {
    return left + (len - 0.5) / static_cast<double>(max_len) * (width - left - right);
  };
  auto sy = [&](double v) { return top + (hi - v) / (hi - lo) * (height - top - bottom); };
  auto fixed = [](double v) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(2) << v;
    return o.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">normalized Margulis invariant vs word length"
      << (spectrum.label.empty() ? "" : " (" + spectrum.label + ")") << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  if (lo < 0 && hi > 0)
    svg << "<line x1=\"" << left << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << width - right << "\" y2=\""
        << fixed(sy(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t len = 1; len <= max_len; ++len)
    svg << "<text x=\"" << fixed(sx(static_cast<double>(len))) << "\" y=\"" << height - bottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << len << "</text>\n";
  svg << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(sy(hi - pad)) << "\" text-anchor=\"end\" font-size=\"11\">"
      << format_number(hi - pad) << "</text>\n";
  svg << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(sy(lo + pad)) << "\" text-anchor=\"end\" font-size=\"11\">"
      << format_number(lo + pad) << "</text>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"12\">word length</text>\n";
  for (const auto& e : spectrum.entries) {
    const char* color = e.sign == Sign::positive ? "#1f77b4" : e.sign == Sign::negative ? "#d62728" : "#7f7f7f";
    svg << "<circle cx=\"" << fixed(sx(static_cast<double>(e.word.length()))) << "\" cy=\"" << fixed(sy(e.normalized))
        << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.6\"><title>" << e.word.human() << "</title></circle>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string emit(const ReportDocument& report, Format format) {
  switch (format) {
    case Format::json: {
      ordered_json out = report.body;
      out["timing"] = {{"elapsed_ms", report.elapsed_ms}};
      return out.dump(2) + "\n";
    }
    case Format::csv:
      if (!report.has_spectrum) throw ParameterError("csv output needs a spectrum or scorecard analysis");
      return emit_csv(report.spectrum);
    case Format::svg:
      if (!report.has_spectrum) throw ParameterError("svg output needs a spectrum or scorecard analysis");
      return emit_svg(report.spectrum);
  }
  return {};
}

}  // namespace margulis
