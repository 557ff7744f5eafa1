#pragma once

#include "margulis/anosov.hpp"
#include "margulis/invariants.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace margulis {

enum class Analysis { check, spectrum, proximality, scorecard };
enum class Format { json, csv, svg };

Analysis parse_analysis(std::string_view name);
Format parse_format(std::string_view name);
std::string to_string(Analysis analysis);

struct ReportParams {
  int ball = 4;
  double r = 0.4;
  double eps = 0.1;
  int samples = 1000;
  std::uint64_t seed = 1;
  int search = 1;
  int ams_ball = 2;
  int kmax = 20;
  double min_margin = 1e-6;
  double max_residual = 1e-6;
};

/// Throws ParameterError on an invalid combination (e.g. eps >= r/2).
void validate(const ReportParams& params);

struct ReportDocument {
  /// Everything except timing, in emission order.
  nlohmann::ordered_json body;
  SpectrumReport spectrum;
  bool has_spectrum = false;
  double elapsed_ms = 0.0;
};

std::string sha256_hex(std::string_view bytes);

ReportDocument run_report(const FreeGroupRep& rep, std::string_view input_bytes, const ReportParams& params,
                          Analysis analysis);

std::string emit(const ReportDocument& report, Format format);

/// CSV table: word,alpha,length_proxy,normalized,sign,gap.
std::string emit_csv(const SpectrumReport& spectrum);
/// Scatter of normalized invariant against word length, colored by sign.
std::string emit_svg(const SpectrumReport& spectrum);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

}  // namespace margulis
