#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace capdrift {

struct PearsonResult {
  bool defined = false;
  double r = 0.0;
};

// Pearson correlation. Undefined when n < 2, sizes differ, or either side
// has zero variance. Bitwise-identical vectors short-circuit to exactly 1
// so float noise can't push a self-comparison off 1.0. Result is clamped to
// [-1, 1].
PearsonResult pearson(const std::vector<double>& x,
                      const std::vector<double>& y);

// One judged per-sample value from one judge, used for cross-judge
// agreement studies.
struct AgreementRow {
  std::string judge;
  std::string benchmark;
  std::string sample_id;
  double value = 0.0;
};

struct AgreementCell {
  bool defined = false;
  double r = 0.0;
  size_t common = 0;  // paired samples behind the cell
};

struct AgreementMatrix {
  std::string benchmark;
  std::vector<std::string> judges;  // sorted; indexes both cell dimensions
  std::vector<std::vector<AgreementCell>> cells;  // symmetric, unit diagonal
};

// Per-benchmark pairwise judge agreement. Pairs are matched on sample_id;
// fewer than 3 common samples leaves the cell undefined (its `common` count
// still reported). A duplicate (judge, sample) keeps the last value.
std::vector<AgreementMatrix> judge_agreement(
    const std::vector<AgreementRow>& rows);

nlohmann::json agreement_to_json(const std::vector<AgreementMatrix>& m);

}  // namespace capdrift
