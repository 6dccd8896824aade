#pragma once

#include <string>
#include <vector>

namespace capdrift {

// One criterion = one narrowly-scoped atomic decision with a closed label
// set. claim_extract is the odd one out: it produces claims in the raw
// output rather than picking a label, but it travels through the same
// blinded/cached/logged machinery as everything else.
enum class Criterion {
  step_validity,
  logical_coherence,
  intermediate_consistency,
  claim_support,
  refusal_class,
  underspec_class,
  multiturn_consistency,
  equivalence,
  followbench_pass,
  evidence_hit_fallback,
  claim_extract,
};

inline constexpr size_t kCriterionCount = 11;

std::string criterion_name(Criterion c);
Criterion parse_criterion(const std::string& s);  // throws on unknown

// Closed label space. "abstain" is reserved for unparseable-after-retry
// outcomes and never appears in any space.
const std::vector<std::string>& criterion_labels(Criterion c);

// Payload field names the criterion accepts; task construction rejects
// anything else, which is how blinding stays statically checkable.
const std::vector<std::string>& criterion_fields(Criterion c);

}  // namespace capdrift
