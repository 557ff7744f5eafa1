#pragma once

#include "margulis/affine_group.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace margulis {

inline constexpr const char* kSchemaVersion = "1";

struct GeneratorEntry {
  std::vector<double> linear;       // row-major (2n+1)^2
  std::vector<double> translation;  // 2n+1
};

/// On-disk representation document.
struct RepDocument {
  std::string schema_version = kSchemaVersion;
  int n = 1;
  int rank = 0;
  std::vector<GeneratorEntry> generators;
  std::optional<Tolerances> tolerances;
  std::string label;
};

/// Parses the structured text form; throws InputError on malformed input.
RepDocument parse_document(std::string_view bytes);
std::string emit_document(const RepDocument& doc);

/// Validates dimensions (InputError) and membership (MembershipError naming
/// the generator index).
FreeGroupRep to_rep(const RepDocument& doc);
RepDocument to_document(const FreeGroupRep& rep);

FreeGroupRep parse_rep(std::string_view bytes);

}  // namespace margulis
