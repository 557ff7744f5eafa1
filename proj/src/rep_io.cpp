#include "margulis/rep_io.hpp"

#include "margulis/errors.hpp"

#include <json.hpp>

namespace margulis {

using ordered_json = nlohmann::ordered_json;

namespace {

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

int integer_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<double> number_array(const ordered_json& v, const std::string& where, std::size_t expected) {
  if (!v.is_array()) throw InputError(where + ": expected an array of numbers");
  if (v.size() != expected)
    throw InputError(where + ": expected " + std::to_string(expected) + " numbers, got " + std::to_string(v.size()));
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(where + ": non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

RepDocument parse_document(std::string_view bytes) {
  ordered_json root;
  try {
    root = ordered_json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!root.is_object()) throw InputError("document root must be an object");

  RepDocument doc;
  const auto& version = field(root, "schema_version", "document");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw InputError("unsupported schema_version (expected \"1\")");
  doc.n = integer_field(root, "n", "document");
  doc.rank = integer_field(root, "rank", "document");
  if (doc.n < 1) throw InputError("n must be at least 1");
  if (doc.rank < 1) throw InputError("rank must be at least 1");
  if (auto it = root.find("label"); it != root.end()) {
    if (!it->is_string()) throw InputError("label must be a string");
    doc.label = it->get<std::string>();
  }

  const auto& gens = field(root, "generators", "document");
  if (!gens.is_array()) throw InputError("generators must be an array");
  if (static_cast<int>(gens.size()) != doc.rank)
    throw InputError("rank is " + std::to_string(doc.rank) + " but " + std::to_string(gens.size()) +
                     " generators are listed");
  const std::size_t d = 2 * static_cast<std::size_t>(doc.n) + 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_object()) throw InputError(where + ": expected an object");
    GeneratorEntry g;
    g.linear = number_array(field(gens[i], "linear", where), where + ".linear", d * d);
    g.translation = number_array(field(gens[i], "translation", where), where + ".translation", d);
    doc.generators.push_back(std::move(g));
  }

  if (auto it = root.find("tolerances"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) throw InputError("tolerances must be an object");
    Tolerances t;
    if (auto v = it->find("tol"); v != it->end()) {
      if (!v->is_number() || !(v->get<double>() > 0)) throw InputError("tolerances.tol must be positive");
      t.tol = v->get<double>();
    }
    if (auto v = it->find("zero_tol"); v != it->end()) {
      if (!v->is_number() || !(v->get<double>() > 0)) throw InputError("tolerances.zero_tol must be positive");
      t.zero_tol = v->get<double>();
    }
    doc.tolerances = t;
  }
  return doc;
}

std::string emit_document(const RepDocument& doc) {
  ordered_json root;
  root["schema_version"] = doc.schema_version;
  root["label"] = doc.label;
  root["n"] = doc.n;
  root["rank"] = doc.rank;
  ordered_json gens = ordered_json::array();
  for (const auto& g : doc.generators) {
    ordered_json e;
    e["linear"] = g.linear;
    e["translation"] = g.translation;
    gens.push_back(std::move(e));
  }
  root["generators"] = std::move(gens);
  if (doc.tolerances) {
    root["tolerances"] = {{"tol", doc.tolerances->tol}, {"zero_tol", doc.tolerances->zero_tol}};
  }
  return root.dump(2) + "\n";
}

FreeGroupRep to_rep(const RepDocument& doc) {
  if (doc.schema_version != kSchemaVersion) throw InputError("unsupported schema_version");
  if (doc.n < 1) throw InputError("n must be at least 1");
  if (doc.rank != static_cast<int>(doc.generators.size()))
    throw InputError("rank does not match the number of generators");
  const QuadraticSpace space(doc.n);
  const auto d = static_cast<std::size_t>(space.dim());
  std::vector<AffineIsometry> gens;
  for (std::size_t i = 0; i < doc.generators.size(); ++i) {
    const auto& g = doc.generators[i];
    if (g.linear.size() != d * d || g.translation.size() != d)
      throw InputError("generators[" + std::to_string(i) + "]: dimension mismatch");
    AffineIsometry iso{Matrix(space.dim(), space.dim()), Vector(space.dim())};
    for (int r = 0; r < space.dim(); ++r) {
      for (int c = 0; c < space.dim(); ++c) iso.linear(r, c) = g.linear[r * d + c];
      iso.translation(r) = g.translation[r];
    }
    gens.push_back(std::move(iso));
  }
  return FreeGroupRep(space, std::move(gens), doc.tolerances.value_or(Tolerances{}), doc.label);
}

RepDocument to_document(const FreeGroupRep& rep) {
  RepDocument doc;
  doc.n = rep.space().n();
  doc.rank = rep.rank();
  doc.label = rep.label();
  doc.tolerances = rep.tolerances();
  for (const auto& g : rep.generators()) {
    GeneratorEntry e;
    for (Eigen::Index r = 0; r < g.linear.rows(); ++r)
      for (Eigen::Index c = 0; c < g.linear.cols(); ++c) e.linear.push_back(g.linear(r, c));
    e.translation.assign(g.translation.data(), g.translation.data() + g.translation.size());
    doc.generators.push_back(std::move(e));
  }
  return doc;
}

FreeGroupRep parse_rep(std::string_view bytes) { return to_rep(parse_document(bytes)); }

}  // namespace margulis
