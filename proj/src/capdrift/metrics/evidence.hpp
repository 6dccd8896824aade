#pragma once

#include <string>
#include <vector>

namespace capdrift {

struct EvidenceOverlap {
  bool hit = false;
  double best_fraction = 0.0;  // best per-passage content-word coverage
  bool substring = false;      // matched via normalized containment
};

// Rule-level grounding check: the answer counts as grounded when its
// normalized text occurs inside one passage, or when >= 80% of its distinct
// content words (stopwords removed) appear in a single passage. Answers with
// no content words never hit. The judge-backed evidence metric uses this as
// its fast path and only consults a judge on misses.
EvidenceOverlap evidence_overlap(const std::string& answer,
                                 const std::vector<std::string>& passages);

bool is_stopword(const std::string& token);

}  // namespace capdrift
