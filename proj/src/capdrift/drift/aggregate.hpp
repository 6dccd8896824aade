#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "capdrift/suite/suite.hpp"

namespace capdrift {

// Outcome of scoring one metric on one (sample, seed) completion.
//   ok             -> value holds the score
//   not_applicable -> the metric does not target this sample (e.g. a
//                     refusal metric on a benign prompt); the sample is
//                     simply outside the metric's population
//   excluded       -> the sample should have been scored but could not be
//                     (abstention, zero extractable claims, disabled
//                     executor, inference error); it leaves the denominator
//                     and is counted
enum class MetricStatus { ok, not_applicable, excluded };

std::string metric_status_name(MetricStatus s);
MetricStatus parse_metric_status(const std::string& s);

struct MetricRecord {
  std::string benchmark;
  std::string sample_id;
  long seed = 0;
  std::string metric;
  MetricStatus status = MetricStatus::ok;
  double value = 0.0;
  std::string detail;    // exclusion reason / note
  bool fallback = false; // a rule metric fell back to the judge
};

nlohmann::json metric_record_to_json(const MetricRecord& r);
MetricRecord metric_record_from_json(const nlohmann::json& j);

// One capability axis for one model after full aggregation. Aggregation
// runs strictly bottom-up: per sample, seed scores average first; per
// benchmark, sample values average (excluded samples shrink the
// denominator); per capability, benchmark values average unweighted.
struct CapabilityScore {
  std::string capability;
  bool defined = false;
  double value = 0.0;
  std::map<std::string, double> per_benchmark;  // defined benchmarks only
  // Spread of the capability value across seeds (population stddev over the
  // per-seed recomputation). Descriptive only; drift math never uses it.
  double seed_stddev = 0.0;
  long samples_used = 0;      // samples contributing anywhere under this axis
  long samples_excluded = 0;  // samples dropped by exclusions
  std::string reason;         // why undefined, when undefined
};

struct AggregateResult {
  // Every taxonomy code is present; check .defined.
  std::map<std::string, CapabilityScore> capabilities;
};

// Aggregates one model's metric records against the suite's
// capability->metric wiring. A sample's axis value is the mean of its
// defined mapped-metric values (each itself a mean over ok seeds); samples
// whose mapped metrics are all not_applicable never enter the population,
// while samples killed by exclusions are counted in samples_excluded.
AggregateResult aggregate_scores(const Suite& suite,
                                 const std::vector<MetricRecord>& records);

}  // namespace capdrift
