#pragma once

#include <string>
#include <vector>

#include "capdrift/drift/aggregate.hpp"
#include "capdrift/suite/capability.hpp"

namespace capdrift {

// Signed relative change in percent: 100 * (candidate - baseline) /
// |baseline|. The caller must exclude baseline == 0 beforehand.
double relative_deviation(double candidate, double baseline);

// Forgetting regimes over the relative deviation, most severe last. "None"
// is strictly delta > -1 (a full -1% is already a minor regression); every
// interior boundary joins the milder regime:
//   None            delta >  -1
//   Minor     -5 <= delta <= -1
//   Moderate -10 <= delta <  -5
//   Major    -20 <= delta < -10
//   Catastrophic    delta < -20
enum class Regime { none, minor, moderate, major, catastrophic };

std::string regime_name(Regime r);
Regime classify_regime(double delta_pct);
int regime_index(Regime r);  // 0 (none) .. 4 (catastrophic)

struct DriftEntry {
  std::string capability;
  CapabilityGroup group = CapabilityGroup::CAN;
  double baseline = 0.0;
  double candidate = 0.0;
  double delta_pct = 0.0;
  Regime regime = Regime::none;
};

struct ExcludedAxis {
  std::string capability;
  std::string reason;
};

struct GroupMean {
  bool defined = false;
  double value = 0.0;  // unweighted mean delta over the group's entries
};

struct DriftReport {
  std::string baseline_model;
  std::string candidate_model;
  std::vector<DriftEntry> entries;    // taxonomy order, comparable axes only
  std::vector<ExcludedAxis> excluded; // taxonomy order
  std::map<std::string, GroupMean> group_means;  // keyed CAN / WILL / HOW
};

// Pairs two aggregates axis-by-axis. An axis lands in `excluded` when
// either side is undefined or the baseline value is exactly zero ("zero
// baseline" — the relative deviation has no meaning there).
DriftReport compute_drift(const AggregateResult& baseline,
                          const AggregateResult& candidate,
                          const std::string& baseline_model,
                          const std::string& candidate_model);

}  // namespace capdrift
