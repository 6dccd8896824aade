#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "capdrift/suite/transform.hpp"

namespace capdrift {

struct SchemaReport {
  // strict: the trimmed response (UTF-8 BOM tolerated) is exactly one JSON
  // object — any surrounding prose fails. This is the scoring mode.
  bool strict_pass = false;
  // lenient: the first balanced {...} group that parses as an object is
  // checked instead. Diagnostic only; never feeds the metric value.
  bool lenient_pass = false;
  std::vector<std::string> missing;     // required fields absent
  std::vector<std::string> wrong_type;  // present but mistyped
  std::optional<nlohmann::json> object; // the object the field checks ran on
};

// Field typing: "string" => is_string; "array" => array of strings (element
// typing enforced). Extra fields are allowed.
SchemaReport score_schema(const std::string& response, const OutputSchema& schema);

// First balanced top-level {...} substring that parses as a JSON object,
// honoring string literals and escapes while scanning.
std::optional<nlohmann::json> extract_json_object(const std::string& text);

}  // namespace capdrift
