#include "capdrift/drift/drift.hpp"

#include <cmath>
#include <stdexcept>

namespace capdrift {

double relative_deviation(double candidate, double baseline) {
  return 100.0 * (candidate - baseline) / std::fabs(baseline);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::none: return "None";
    case Regime::minor: return "Minor";
    case Regime::moderate: return "Moderate";
    case Regime::major: return "Major";
    case Regime::catastrophic: return "Catastrophic";
  }
  return "None";
}

Regime classify_regime(double delta_pct) {
  if (delta_pct > -1.0) return Regime::none;
  if (delta_pct >= -5.0) return Regime::minor;
  if (delta_pct >= -10.0) return Regime::moderate;
  if (delta_pct >= -20.0) return Regime::major;
  return Regime::catastrophic;
}

int regime_index(Regime r) { return static_cast<int>(r); }

DriftReport compute_drift(const AggregateResult& baseline,
                          const AggregateResult& candidate,
                          const std::string& baseline_model,
                          const std::string& candidate_model) {
  DriftReport rep;
  rep.baseline_model = baseline_model;
  rep.candidate_model = candidate_model;

  struct GroupAcc {
    double sum = 0.0;
    int n = 0;
  };
  std::map<CapabilityGroup, GroupAcc> acc;

  for (const CapabilityInfo& info : kCapabilities) {
    const std::string cap(info.code);
    const CapabilityScore& b = baseline.capabilities.at(cap);
    const CapabilityScore& c = candidate.capabilities.at(cap);
    if (!b.defined || !c.defined) {
      std::string reason = !b.defined && !c.defined ? "no scores (both models)"
                           : !b.defined ? "no scores (baseline)"
                                        : "no scores (candidate)";
      rep.excluded.push_back({cap, reason});
      continue;
    }
    if (b.value == 0.0) {
      rep.excluded.push_back({cap, "zero baseline"});
      continue;
    }
    DriftEntry e;
    e.capability = cap;
    e.group = info.group;
    e.baseline = b.value;
    e.candidate = c.value;
    e.delta_pct = relative_deviation(c.value, b.value);
    e.regime = classify_regime(e.delta_pct);
    acc[e.group].sum += e.delta_pct;
    acc[e.group].n += 1;
    rep.entries.push_back(std::move(e));
  }

  for (CapabilityGroup g :
       {CapabilityGroup::CAN, CapabilityGroup::WILL, CapabilityGroup::HOW}) {
    GroupMean gm;
    auto it = acc.find(g);
    if (it != acc.end() && it->second.n > 0) {
      gm.defined = true;
      gm.value = it->second.sum / it->second.n;
    }
    rep.group_means[std::string(group_name(g))] = gm;
  }
  return rep;
}

}  // namespace capdrift
