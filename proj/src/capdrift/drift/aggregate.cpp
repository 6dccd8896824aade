#include "capdrift/drift/aggregate.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "capdrift/suite/capability.hpp"

namespace capdrift {

std::string metric_status_name(MetricStatus s) {
  switch (s) {
    case MetricStatus::ok: return "ok";
    case MetricStatus::not_applicable: return "not_applicable";
    case MetricStatus::excluded: return "excluded";
  }
  return "ok";
}

MetricStatus parse_metric_status(const std::string& s) {
  if (s == "ok") return MetricStatus::ok;
  if (s == "not_applicable") return MetricStatus::not_applicable;
  if (s == "excluded") return MetricStatus::excluded;
  throw std::runtime_error("unknown metric status: " + s);
}

nlohmann::json metric_record_to_json(const MetricRecord& r) {
  nlohmann::json j{{"benchmark", r.benchmark},
                   {"sample_id", r.sample_id},
                   {"seed", r.seed},
                   {"metric", r.metric},
                   {"status", metric_status_name(r.status)},
                   {"value", r.value}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.fallback) j["fallback"] = true;
  return j;
}

MetricRecord metric_record_from_json(const nlohmann::json& j) {
  MetricRecord r;
  r.benchmark = j.at("benchmark").get<std::string>();
  r.sample_id = j.at("sample_id").get<std::string>();
  r.seed = j.at("seed").get<long>();
  r.metric = j.at("metric").get<std::string>();
  r.status = parse_metric_status(j.at("status").get<std::string>());
  r.value = j.at("value").get<double>();
  r.detail = j.value("detail", std::string());
  r.fallback = j.value("fallback", false);
  return r;
}

namespace {

struct SeedVal {
  MetricStatus status = MetricStatus::ok;
  double value = 0.0;
};

// benchmark -> metric -> sample -> seed -> record
using Index =
    std::map<std::string,
             std::map<std::string, std::map<std::string, std::map<long, SeedVal>>>>;

struct SampleOutcome {
  bool defined = false;   // has an axis value
  bool in_population = false;  // at least one non-n/a record seen
  double value = 0.0;
};

// One sample's value for one axis: mean over its defined mapped-metric
// values, each the mean over ok seeds (or the single filtered seed).
SampleOutcome sample_axis_value(
    const std::map<std::string, std::map<std::string, std::map<long, SeedVal>>>&
        bench_metrics,
    const std::vector<std::string>& mapped, const std::string& sample_id,
    const long* seed_filter) {
  SampleOutcome out;
  double sum = 0.0;
  int defined_metrics = 0;
  for (const std::string& metric : mapped) {
    auto mit = bench_metrics.find(metric);
    if (mit == bench_metrics.end()) continue;
    auto sit = mit->second.find(sample_id);
    if (sit == mit->second.end()) continue;
    double seed_sum = 0.0;
    int seed_n = 0;
    for (const auto& [seed, rec] : sit->second) {
      if (seed_filter && seed != *seed_filter) continue;
      if (rec.status != MetricStatus::not_applicable) out.in_population = true;
      if (rec.status == MetricStatus::ok) {
        seed_sum += rec.value;
        ++seed_n;
      }
    }
    if (seed_n > 0) {
      sum += seed_sum / seed_n;
      ++defined_metrics;
    }
  }
  if (defined_metrics > 0) {
    out.defined = true;
    out.value = sum / defined_metrics;
  }
  return out;
}

struct CapOutcome {
  bool defined = false;
  double value = 0.0;
  std::map<std::string, double> per_benchmark;
  long used = 0;
  long excluded = 0;
};

CapOutcome capability_value(const Suite& suite, const Index& index,
                            const std::string& cap, const long* seed_filter) {
  CapOutcome out;
  double bench_sum = 0.0;
  int bench_n = 0;
  for (const BenchmarkManifest& bm : suite.benchmarks) {
    auto cm = bm.capability_metrics.find(cap);
    if (cm == bm.capability_metrics.end()) continue;
    auto bit = index.find(bm.name);
    if (bit == index.end()) continue;
    // Population: every sample id with a record under any mapped metric.
    std::set<std::string> sample_ids;
    for (const std::string& metric : cm->second) {
      auto mit = bit->second.find(metric);
      if (mit == bit->second.end()) continue;
      for (const auto& [sid, seeds] : mit->second) {
        (void)seeds;
        sample_ids.insert(sid);
      }
    }
    double sample_sum = 0.0;
    long sample_n = 0;
    for (const std::string& sid : sample_ids) {
      SampleOutcome so =
          sample_axis_value(bit->second, cm->second, sid, seed_filter);
      if (so.defined) {
        sample_sum += so.value;
        ++sample_n;
      } else if (so.in_population) {
        ++out.excluded;
      }
      // neither: all records not_applicable — outside this axis entirely
    }
    if (sample_n > 0) {
      const double bench_value = sample_sum / static_cast<double>(sample_n);
      out.per_benchmark[bm.name] = bench_value;
      bench_sum += bench_value;
      ++bench_n;
      out.used += sample_n;
    }
  }
  if (bench_n > 0) {
    out.defined = true;
    out.value = bench_sum / bench_n;
  }
  return out;
}

}  // namespace

AggregateResult aggregate_scores(const Suite& suite,
                                 const std::vector<MetricRecord>& records) {
  Index index;
  std::set<long> seeds;
  for (const MetricRecord& r : records) {
    index[r.benchmark][r.metric][r.sample_id][r.seed] = {r.status, r.value};
    seeds.insert(r.seed);
  }

  AggregateResult out;
  for (const CapabilityInfo& info : kCapabilities) {
    const std::string cap(info.code);
    CapabilityScore cs;
    cs.capability = cap;
    CapOutcome full = capability_value(suite, index, cap, nullptr);
    cs.defined = full.defined;
    cs.value = full.value;
    cs.per_benchmark = std::move(full.per_benchmark);
    cs.samples_used = full.used;
    cs.samples_excluded = full.excluded;
    if (!cs.defined) cs.reason = "no valid benchmark scores";

    if (cs.defined && seeds.size() > 1) {
      std::vector<double> per_seed;
      for (long s : seeds) {
        CapOutcome one = capability_value(suite, index, cap, &s);
        if (one.defined) per_seed.push_back(one.value);
      }
      if (per_seed.size() > 1) {
        double mean = 0.0;
        for (double v : per_seed) mean += v;
        mean /= static_cast<double>(per_seed.size());
        double var = 0.0;
        for (double v : per_seed) var += (v - mean) * (v - mean);
        cs.seed_stddev = std::sqrt(var / static_cast<double>(per_seed.size()));
      }
    }
    out.capabilities.emplace(cap, std::move(cs));
  }
  return out;
}

}  // namespace capdrift
