#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "margulis/catalog.hpp"
#include "margulis/errors.hpp"
#include "margulis/invariants.hpp"
#include "margulis/rep_io.hpp"
#include "margulis/report.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace margulis;

namespace {

const char* kMinimal = R"({
  "schema_version": "1",
  "n": 1,
  "rank": 2,
  "label": "minimal",
  "generators": [
    {"linear": [2, 0, 0, 0, 1, 0, 0, 0, 0.5], "translation": [0, 3, 0]},
    {"linear": [1, 0, 0, 0, 1, 0, 0, 0, 1], "translation": [1, 0, 0]}
  ]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::string message_of(const std::string& doc) {
  try {
    parse_rep(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("margulis_test_" + name);
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const auto out = scratch("cli_stdout");
  const std::string cmd = std::string(MARGULIS_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("minimal document loads") {
  const auto rep = parse_rep(kMinimal);
  CHECK(rep.rank() == 2);
  CHECK(rep.space().n() == 1);
  CHECK(rep.label() == "minimal");
  CHECK(rep.generators()[0].linear(0, 0) == 2.0);
  CHECK(rep.generators()[0].translation(1) == 3.0);
}

TEST_CASE("membership failure names the generator") {
  const std::string bad = replace(kMinimal, "[1, 0, 0, 0, 1, 0, 0, 0, 1]", "[1, 0, 0, 0, -1, 0, 0, 0, 1]");
  CHECK_THROWS_AS(parse_rep(bad), MembershipError);
  const std::string msg = message_of(bad);
  CHECK(msg.find("generator 1") != std::string::npos);
  CHECK(msg.find("determinant") != std::string::npos);
}

TEST_CASE("dimension and structure errors") {
  const std::string short_matrix = replace(kMinimal, "[2, 0, 0, 0, 1, 0, 0, 0, 0.5]", "[2, 0, 0, 0, 1, 0, 0, 0]");
  CHECK_THROWS_AS(parse_rep(short_matrix), InputError);
  CHECK(message_of(short_matrix) == "generators[0].linear: expected 9 numbers, got 8");

  CHECK_THROWS_AS(parse_rep("{"), InputError);
  CHECK_THROWS_AS(parse_rep("[]"), InputError);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "\"schema_version\": \"1\"", "\"schema_version\": \"2\"")), InputError);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "\"rank\": 2", "\"rank\": 3")), InputError);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "\"n\": 1", "\"n\": 0")), InputError);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "[0, 3, 0]", "[0, 3]")), InputError);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "[0, 3, 0]", "[0, \"x\", 0]")), InputError);
  CHECK(message_of(replace(kMinimal, "\"n\": 1,", "")).find("missing field 'n'") != std::string::npos);
}

TEST_CASE("tolerance overrides") {
  const std::string doc = replace(kMinimal, "\"label\": \"minimal\",",
                                  "\"label\": \"minimal\", \"tolerances\": {\"tol\": 1e-7, \"zero_tol\": 1e-6},");
  const auto rep = parse_rep(doc);
  CHECK(rep.tolerances().tol == 1e-7);
  CHECK(rep.tolerances().zero_tol == 1e-6);
  CHECK_THROWS_AS(parse_rep(replace(kMinimal, "\"label\": \"minimal\",", "\"tolerances\": {\"tol\": -1},")), InputError);
}

TEST_CASE("round trip preserves every number") {
  for (const auto& name : catalog_names()) {
    const RepDocument doc = catalog(name);
    const std::string text = emit_document(doc);
    const RepDocument back = parse_document(text);
    CHECK(back.label == doc.label);
    CHECK(back.n == doc.n);
    REQUIRE(back.generators.size() == doc.generators.size());
    for (std::size_t i = 0; i < doc.generators.size(); ++i) {
      CHECK(back.generators[i].linear == doc.generators[i].linear);
      CHECK(back.generators[i].translation == doc.generators[i].translation);
    }
    CHECK(emit_document(back) == text);
    RepDocument via_rep = to_document(to_rep(doc));
    REQUIRE(via_rep.tolerances);
    via_rep.tolerances.reset();
    CHECK(emit_document(via_rep) == text);
  }
}

TEST_CASE("catalog sign checks") {
  auto signs = [](const std::string& name) {
    const auto rep = to_rep(catalog(name));
    std::vector<Sign> out;
    for (const auto& g : rep.generators())
      out.push_back(classify(margulis_invariant(rep.space(), g), g.translation, rep.tolerances().zero_tol));
    return out;
  };
  CHECK(signs("margulis_positive_n1") == std::vector<Sign>{Sign::positive, Sign::positive});
  CHECK(signs("mixed_sign_n1") == std::vector<Sign>{Sign::positive, Sign::negative});
  CHECK(signs("linear_only") == std::vector<Sign>{Sign::zero, Sign::zero});
  CHECK(signs("block_n2") == std::vector<Sign>{Sign::positive, Sign::positive});
  CHECK_THROWS_AS(catalog("no_such_rep"), ParameterError);
  CHECK(emit_document(catalog("margulis_positive_n1")) == emit_document(catalog("margulis_positive_n1")));
  CatalogParams p;
  p.lambda = 12.0;
  CHECK(to_rep(catalog("margulis_positive_n1", p)).generators()[0].linear.norm() > 12.0);
}

TEST_CASE("report parameters") {
  ReportParams p;
  CHECK_NOTHROW(validate(p));
  p.eps = 0.2;
  CHECK_THROWS_AS(validate(p), ParameterError);
  p = {};
  p.ball = 0;
  CHECK_THROWS_AS(validate(p), ParameterError);
  p = {};
  p.samples = 0;
  CHECK_THROWS_AS(validate(p), ParameterError);
  CHECK_THROWS_AS(parse_format("xml"), ParameterError);
  CHECK_THROWS_AS(parse_analysis("prove"), ParameterError);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("spectrum report outputs") {
  const std::string bytes = emit_document(catalog("margulis_positive_n1"));
  const auto rep = parse_rep(bytes);
  ReportParams p;
  const auto report = run_report(rep, bytes, p, Analysis::spectrum);
  const std::string csv = emit(report, Format::csv);
  CHECK(csv.rfind("word,alpha,length_proxy,normalized,sign,gap\n", 0) == 0);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  CHECK(rows == report.spectrum.entries.size());
  CHECK(rows == word_ball_size(2, p.ball) - report.spectrum.skipped.size());
  CHECK(csv.find("\n\"[1]\",1,") != std::string::npos);

  const auto body = nlohmann::json::parse(emit(report, Format::json));
  CHECK(body["spectrum"]["verdict"] == "uniform_positive");
  CHECK(body["input_digest"] == "sha256:" + sha256_hex(bytes));
  CHECK(body["parameters"]["ball"] == 4);
  CHECK(body.contains("timing"));

  const std::string svg = emit(report, Format::svg);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("#1f77b4") != std::string::npos);
  CHECK(svg.find("#d62728") == std::string::npos);
  CHECK(svg.find("#7f7f7f") == std::string::npos);

  const auto check = run_report(rep, bytes, p, Analysis::check);
  CHECK_THROWS_AS(emit(check, Format::csv), ParameterError);
}

TEST_CASE("reports are deterministic apart from timing") {
  const std::string bytes = emit_document(catalog("margulis_positive_n1"));
  const auto rep = parse_rep(bytes);
  ReportParams p;
  p.samples = 200;
  for (auto analysis : {Analysis::check, Analysis::spectrum, Analysis::proximality, Analysis::scorecard}) {
    const auto a = run_report(rep, bytes, p, analysis);
    const auto b = run_report(rep, bytes, p, analysis);
    CHECK(a.body.dump(2) == b.body.dump(2));
    if (a.has_spectrum) CHECK(emit(a, Format::csv) == emit(b, Format::csv));
  }
  const auto mixed = run_report(parse_rep(emit_document(catalog("mixed_sign_n1"))), bytes, p, Analysis::spectrum);
  const std::string svg = emit(mixed, Format::svg);
  CHECK(svg.find("#1f77b4") != std::string::npos);
  CHECK(svg.find("#d62728") != std::string::npos);
  CHECK(svg.find("#7f7f7f") != std::string::npos);
}

TEST_CASE("command line exit codes") {
  const auto good = scratch("good.json");
  const auto bad = scratch("bad.json");
  const auto member = scratch("member.json");
  std::ofstream(good) << kMinimal;
  std::ofstream(bad) << "{ not json";
  std::ofstream(member) << replace(kMinimal, "[1, 0, 0, 0, 1, 0, 0, 0, 1]", "[1, 0, 0, 0, -1, 0, 0, 0, 1]");

  std::string out;
  CHECK(run_cli("check --rep " + good.string(), &out) == 0);
  CHECK(out.find("\"analysis\": \"check\"") != std::string::npos);
  CHECK(run_cli("spectrum --rep " + bad.string()) == 2);
  CHECK(run_cli("spectrum --rep " + member.string()) == 2);
  CHECK(run_cli("spectrum --rep /nonexistent/file.json") == 2);
  CHECK(run_cli("spectrum --rep " + good.string() + " --eps 0.3 --r 0.4") == 3);
  CHECK(run_cli("spectrum --rep " + good.string() + " --ball 0") == 3);
  CHECK(run_cli("spectrum --rep " + good.string() + " --format xml") == 3);
  CHECK(run_cli("spectrum --ball 2") == 3);
  CHECK(run_cli("spectrum --ball two --rep " + good.string()) == 3);
  CHECK(run_cli("frobnicate") == 3);
  CHECK(run_cli("catalog --name nope") == 3);

  CHECK(run_cli("catalog --list", &out) == 0);
  CHECK(out.find("margulis_positive_n1") != std::string::npos);
  CHECK(run_cli("catalog --name mixed_sign_n1", &out) == 0);
  CHECK(parse_document(out).label == "mixed_sign_n1");

  std::string csv1, csv2;
  CHECK(run_cli("scorecard --catalog margulis_positive_n1 --format csv --samples 100", &csv1) == 0);
  CHECK(run_cli("scorecard --catalog margulis_positive_n1 --format csv --samples 100", &csv2) == 0);
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("word,alpha,length_proxy,normalized,sign,gap\n", 0) == 0);

  CHECK(run_cli("scorecard --catalog mixed_sign_n1 --samples 100", &out) == 0);
  CHECK(nlohmann::json::parse(out)["scorecard"]["verdict"] == "inconsistent");
  CHECK(run_cli("scorecard --catalog margulis_positive_n1 --samples 100", &out) == 0);
  CHECK(nlohmann::json::parse(out)["scorecard"]["verdict"] == "consistent_affine_anosov");

  const auto svg = scratch("plot.svg");
  CHECK(run_cli("spectrum --catalog linear_only --format svg --out " + svg.string()) == 0);
  CHECK(std::filesystem::file_size(svg) > 0);
  CHECK(run_cli("proximality --catalog margulis_positive_n1 --samples 100", &out) == 0);
  CHECK(nlohmann::json::parse(out)["proximality"]["certificates"].size() == 4);
}
