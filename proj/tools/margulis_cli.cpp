#include "margulis/catalog.hpp"
#include "margulis/errors.hpp"
#include "margulis/report.hpp"
#include "margulis/rep_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitParameter = 3;

struct InputOptions {
  std::string rep_path;
  std::string catalog_name;
  double lambda = margulis::CatalogParams{}.lambda;
};

struct OutputOptions {
  std::string out;
  std::string format = "json";
};

std::string read_input(const InputOptions& in) {
  if (!in.rep_path.empty() && !in.catalog_name.empty())
    throw margulis::ParameterError("give either --rep or --catalog, not both");
  if (!in.catalog_name.empty()) {
    margulis::CatalogParams params;
    params.lambda = in.lambda;
    return margulis::emit_document(margulis::catalog(in.catalog_name, params));
  }
  if (in.rep_path.empty()) throw margulis::ParameterError("one of --rep or --catalog is required");
  std::ifstream file(in.rep_path, std::ios::binary);
  if (!file) throw margulis::InputError("cannot read " + in.rep_path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

void write_output(const OutputOptions& out, const std::string& bytes) {
  if (out.out.empty() || out.out == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream file(out.out, std::ios::binary);
  if (!file) throw margulis::ParameterError("cannot write " + out.out);
  file << bytes;
  if (!file) throw margulis::ParameterError("failed writing " + out.out);
}

void add_analysis_flags(CLI::App* cmd, InputOptions& in, OutputOptions& out, margulis::ReportParams& p) {
  cmd->add_option("--rep", in.rep_path, "representation document");
  cmd->add_option("--catalog", in.catalog_name, "use a catalog representation instead of --rep");
  cmd->add_option("--lambda", in.lambda, "top eigenvalue for catalog generators");
  cmd->add_option("--ball", p.ball, "word ball radius");
  cmd->add_option("--r", p.r, "separation radius for proximality");
  cmd->add_option("--eps", p.eps, "neighborhood size for proximality");
  cmd->add_option("--samples", p.samples, "Monte Carlo samples per certificate");
  cmd->add_option("--seed", p.seed, "sampling seed");
  cmd->add_option("--search", p.search, "correcting word length for the AMS cover");
  cmd->add_option("--ams-ball", p.ams_ball, "word ball radius for the AMS cover");
  cmd->add_option("--kmax", p.kmax, "largest power in contraction fits");
  cmd->add_option("--min-margin", p.min_margin, "transversality threshold");
  cmd->add_option("--max-residual", p.max_residual, "contraction fit residual threshold");
  cmd->add_option("--out", out.out, "output file (default stdout)");
  cmd->add_option("--format", out.format, "json, csv or svg");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Margulis invariants and affine Anosov diagnostics for free group representations"};
  app.require_subcommand(1);

  InputOptions in;
  OutputOptions out;
  margulis::ReportParams params;

  std::optional<margulis::Analysis> analysis;
  CLI::App* scorecard_cmd = nullptr;
  const std::pair<const char*, const char*> commands[] = {
      {"check", "validate a representation and report generator diagnostics"},
      {"spectrum", "Margulis invariants over a word ball with the sign verdict"},
      {"proximality", "(r, eps) certificates for generators and the AMS cover"},
      {"scorecard", "combined affine Anosov evidence"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    if (std::string(name) == "scorecard") scorecard_cmd = cmd;
    add_analysis_flags(cmd, in, out, params);
    cmd->callback([&analysis, name] { analysis = margulis::parse_analysis(name); });
  }

  std::string catalog_name;
  bool list = false;
  auto* cat = app.add_subcommand("catalog", "emit a catalog representation document");
  cat->add_option("--name", catalog_name, "catalog entry");
  cat->add_flag("--list", list, "list catalog entries");
  cat->add_option("--lambda", in.lambda, "top eigenvalue for catalog generators");
  cat->add_option("--out", out.out, "output file (default stdout)");
  cat->add_option("--format", out.format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (cat->parsed()) {
      if (list) {
        std::string names;
        for (const auto& n : margulis::catalog_names()) names += n + "\n";
        write_output(out, names);
        return kExitOk;
      }
      if (catalog_name.empty()) throw margulis::ParameterError("catalog needs --name or --list");
      if (out.format != "json") throw margulis::ParameterError("catalog documents are emitted as json only");
      margulis::CatalogParams cp;
      cp.lambda = in.lambda;
      write_output(out, margulis::emit_document(margulis::catalog(catalog_name, cp)));
      return kExitOk;
    }

    if (scorecard_cmd->parsed() && scorecard_cmd->count("--ball") == 0) params.ball = margulis::ScorecardConfig{}.ball;
    const auto format = margulis::parse_format(out.format);
    margulis::validate(params);
    if (format != margulis::Format::json && (*analysis == margulis::Analysis::check ||
                                             *analysis == margulis::Analysis::proximality))
      throw margulis::ParameterError(out.format + " output needs spectrum or scorecard");
    const std::string bytes = read_input(in);
    const auto rep = margulis::parse_rep(bytes);
    const auto report = margulis::run_report(rep, bytes, params, *analysis);
    write_output(out, margulis::emit(report, format));
    return kExitOk;
  } catch (const margulis::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const margulis::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const margulis::MembershipError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const margulis::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
