#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "capdrift/drift/aggregate.hpp"
#include "capdrift/drift/drift.hpp"
#include "capdrift/drift/sweep.hpp"

namespace capdrift {

nlohmann::json drift_report_to_json(const DriftReport& rep);

// One CSV row per taxonomy axis, comparable or not:
//   capability,group,delta_pct,regime,reason
// Comparable axes carry their delta and regime with an empty reason;
// excluded axes carry regime "excluded", an empty delta, and the reason.
std::string drift_report_to_csv(const DriftReport& rep);

// recipe_id,w,stability,plasticity — one row per sweep point, sorted as
// computed (by w).
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

nlohmann::json capability_scores_to_json(const std::string& model,
                                         const AggregateResult& agg);

// Writes drift.json, drift.csv, and spider.svg under `report_dir`. Every
// float goes through fmt_double and nothing carries a timestamp, so equal
// inputs yield byte-identical artifacts.
void emit_drift_artifacts(const std::filesystem::path& report_dir,
                          const DriftReport& rep);

// Writes sweep.csv and sweep.svg under `report_dir`.
void emit_sweep_artifacts(const std::filesystem::path& report_dir,
                          const std::vector<SweepPoint>& points);

}  // namespace capdrift
