#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace capdrift {

struct ConstraintResult {
  std::string kind;
  bool pass = false;
  std::string detail;
};

struct ConstraintsScore {
  double value = 0.0;  // 1 iff every constraint passes (all-or-nothing)
  std::vector<ConstraintResult> per_constraint;
  bool unknown_kind = false;  // scoring error: constraint list not checkable
  std::string error;
};

// Constraint list format (meta.constraints): array of objects
//   {"kind": "max_words",        "n": 50}
//   {"kind": "min_words",        "n": 10}
//   {"kind": "include_keyword",  "text": "volcano"}   (case-insensitive)
//   {"kind": "exclude_keyword",  "text": "lava"}
//   {"kind": "case_upper"} / {"kind": "case_lower"}   (all cased letters)
//   {"kind": "min_bullets",      "n": 3}
//   {"kind": "language",         "code": "en"}        (script-majority check)
//   {"kind": "json_required"}                         (parses as JSON)
// An unrecognized kind marks the sample as a scoring error rather than
// guessing — the caller excludes it with a reason.
ConstraintsScore score_constraints(const std::string& response,
                                   const nlohmann::json& constraints);

}  // namespace capdrift
