#pragma once

#include <set>
#include <string>
#include <vector>

namespace capdrift {

struct CitationScore {
  bool used_citation = false;   // at least one [k] present
  bool format_ok = true;        // every citation is 1..num_sources (vacuous
                                // when no citations)
  double source_acc = 0.0;      // |cited ∩ supporting| / |cited|; 0 when none
  std::set<int> cited;          // distinct cited indices
};

// Citations are bracketed integers: [3], or comma lists [1,3]. 1-based
// indices into the sample's source list. `supporting` holds the indices of
// the genuinely supporting sources.
CitationScore score_citation(const std::string& response, int num_sources,
                             const std::set<int>& supporting);

}  // namespace capdrift
