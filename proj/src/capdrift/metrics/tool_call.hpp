#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace capdrift {

struct ToolCallScore {
  double selection = 0.0;  // 1 iff the emitted call names the expected tool
  double args = 0.0;       // 1 iff selection passed AND canonical args equal
  bool parsed = false;     // a {"name": ..., "arguments": {...}} was found
  std::optional<nlohmann::json> call;
};

// Numbers with integral values are normalized to integers recursively before
// comparison, so 2.0 and 2 are the same argument.
nlohmann::json canonicalize_args(const nlohmann::json& j);

// Expected call: {"name": "...", "arguments": {...}}. The response's first
// parseable JSON object with a "name" field is taken as the emitted call
// ("arguments" defaults to {}).
ToolCallScore score_tool_call(const std::string& response,
                              const nlohmann::json& expected_call);

}  // namespace capdrift
