#include "capdrift/judge/criteria.hpp"

#include <stdexcept>

namespace capdrift {

namespace {

struct CriterionInfo {
  Criterion criterion;
  const char* name;
  std::vector<std::string> labels;
  std::vector<std::string> fields;
};

const std::vector<CriterionInfo>& table() {
  static const std::vector<CriterionInfo> t = {
      {Criterion::step_validity, "step_validity",
       {"valid", "invalid"},
       {"question", "step"}},
      {Criterion::logical_coherence, "logical_coherence",
       {"coherent", "incoherent"},
       {"prev_step", "next_step"}},
      {Criterion::intermediate_consistency, "intermediate_consistency",
       {"consistent", "inconsistent"},
       {"question", "chain"}},
      {Criterion::claim_support, "claim_support",
       {"supported", "unsupported"},
       {"claim", "reference"}},
      {Criterion::refusal_class, "refusal_class",
       {"refuse", "attempt"},
       {"response"}},
      {Criterion::underspec_class, "underspec_class",
       {"refuse", "attempt"},
       {"response"}},
      {Criterion::multiturn_consistency, "multiturn_consistency",
       {"0", "0.5", "1"},
       {"turn1_user", "turn1_assistant", "turn2_user", "response"}},
      {Criterion::equivalence, "equivalence",
       {"match", "no_match"},
       {"candidate", "gold"}},
      {Criterion::followbench_pass, "followbench_pass",
       {"pass", "fail"},
       {"instruction", "response"}},
      {Criterion::evidence_hit_fallback, "evidence_hit_fallback",
       {"hit", "miss"},
       {"answer", "passages"}},
      {Criterion::claim_extract, "claim_extract", {"ok"}, {"text"}},
  };
  return t;
}

const CriterionInfo& info(Criterion c) {
  for (const auto& row : table())
    if (row.criterion == c) return row;
  throw std::logic_error("criterion missing from table");
}

}  // namespace

std::string criterion_name(Criterion c) { return info(c).name; }

Criterion parse_criterion(const std::string& s) {
  for (const auto& row : table())
    if (s == row.name) return row.criterion;
  throw std::runtime_error("unknown criterion: " + s);
}

const std::vector<std::string>& criterion_labels(Criterion c) {
  return info(c).labels;
}

const std::vector<std::string>& criterion_fields(Criterion c) {
  return info(c).fields;
}

}  // namespace capdrift
