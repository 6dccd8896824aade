#include <random>

#include "doctest.h"

#include "capdrift/drift/aggregate.hpp"
#include "capdrift/drift/drift.hpp"

using namespace capdrift;

namespace {

Suite tiny_suite() {
  Suite s;
  s.name = "tiny";
  s.version = "1";
  BenchmarkManifest bm;
  bm.name = "bench";
  bm.source_path = "benchmarks/bench.jsonl";
  bm.capabilities = {"C1"};
  bm.metrics = {"numeric_acc"};
  bm.capability_metrics = {{"C1", {"numeric_acc"}}};
  bm.total_samples = 4;
  bm.subset_size = 4;
  s.benchmarks.push_back(bm);
  return s;
}

MetricRecord rec(std::string sample, long seed, double value,
                 MetricStatus st = MetricStatus::ok) {
  MetricRecord r;
  r.benchmark = "bench";
  r.sample_id = std::move(sample);
  r.seed = seed;
  r.metric = "numeric_acc";
  r.status = st;
  r.value = value;
  return r;
}

AggregateResult constant_aggregate(double value) {
  Suite s = tiny_suite();
  return aggregate_scores(s, {rec("s1", 0, value)});
}

}  // namespace

TEST_CASE("regime table matches the published thresholds") {
  struct Row {
    double delta;
    Regime want;
  };
  const Row rows[] = {
      {0.0, Regime::none},        {-0.5, Regime::none},
      {-0.999, Regime::none},     {-1.0, Regime::minor},
      {-3.0, Regime::minor},      {-5.0, Regime::minor},
      {-5.001, Regime::moderate}, {-7.0, Regime::moderate},
      {-10.0, Regime::moderate},  {-15.0, Regime::major},
      {-20.0, Regime::major},     {-20.001, Regime::catastrophic},
      {-25.0, Regime::catastrophic},
  };
  for (const Row& r : rows) {
    INFO("delta ", r.delta);
    CHECK(classify_regime(r.delta) == r.want);
  }
  CHECK(regime_name(Regime::catastrophic) == "Catastrophic");
  CHECK(regime_index(Regime::none) == 0);
  CHECK(regime_index(Regime::catastrophic) == 4);
}

TEST_CASE("regime is monotone in delta") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> d(-30.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    double a = d(rng), b = d(rng);
    if (a < b) std::swap(a, b);  // a >= b
    CHECK(regime_index(classify_regime(a)) <=
          regime_index(classify_regime(b)));
  }
}

TEST_CASE("relative deviation uses the baseline magnitude") {
  CHECK(relative_deviation(0.45, 0.5) == doctest::Approx(-10.0));
  CHECK(relative_deviation(0.55, 0.5) == doctest::Approx(10.0));
  CHECK(relative_deviation(-0.45, -0.5) == doctest::Approx(10.0));
}

TEST_CASE("aggregation is strictly bottom-up") {
  Suite s = tiny_suite();

  SUBCASE("seed scores average first, then samples") {
    // s1: seeds 1.0, 0.0 -> 0.5; s2: single seed 1.0; bench = 0.75
    auto agg = aggregate_scores(
        s, {rec("s1", 0, 1.0), rec("s1", 1, 0.0), rec("s2", 0, 1.0)});
    const CapabilityScore& c1 = agg.capabilities.at("C1");
    REQUIRE(c1.defined);
    CHECK(c1.value == 0.75);
    CHECK(c1.samples_used == 2);
    CHECK(c1.samples_excluded == 0);
    CHECK(c1.per_benchmark.at("bench") == 0.75);
    CHECK(c1.seed_stddev > 0.0);
  }
  SUBCASE("excluded samples shrink the denominator and are counted") {
    auto agg = aggregate_scores(
        s, {rec("s1", 0, 1.0), rec("s2", 0, 0.0, MetricStatus::excluded)});
    const CapabilityScore& c1 = agg.capabilities.at("C1");
    CHECK(c1.value == 1.0);  // not 0.5
    CHECK(c1.samples_used == 1);
    CHECK(c1.samples_excluded == 1);
  }
  SUBCASE("not_applicable samples never enter the population") {
    auto agg = aggregate_scores(
        s, {rec("s1", 0, 1.0), rec("s2", 0, 0.0, MetricStatus::not_applicable)});
    const CapabilityScore& c1 = agg.capabilities.at("C1");
    CHECK(c1.value == 1.0);
    CHECK(c1.samples_used == 1);
    CHECK(c1.samples_excluded == 0);  // outside the population, not dropped
  }
  SUBCASE("no records leaves the axis undefined with a reason") {
    auto agg = aggregate_scores(s, {});
    const CapabilityScore& c1 = agg.capabilities.at("C1");
    CHECK_FALSE(c1.defined);
    CHECK_FALSE(c1.reason.empty());
    // every taxonomy code is present either way
    CHECK(agg.capabilities.size() == kCapabilities.size());
  }
  SUBCASE("benchmarks average unweighted within a capability") {
    BenchmarkManifest other;
    other.name = "other";
    other.source_path = "benchmarks/other.jsonl";
    other.capabilities = {"C1"};
    other.metrics = {"numeric_acc"};
    other.capability_metrics = {{"C1", {"numeric_acc"}}};
    other.total_samples = 3;
    other.subset_size = 3;
    s.benchmarks.push_back(other);
    // bench: one sample at 1.0. other: three samples at 0.0.
    std::vector<MetricRecord> rs{rec("a", 0, 1.0)};
    for (const char* id : {"x", "y", "z"}) {
      MetricRecord r = rec(id, 0, 0.0);
      r.benchmark = "other";
      rs.push_back(r);
    }
    auto agg = aggregate_scores(s, rs);
    // unweighted mean of benchmark values (1.0 + 0.0)/2, not sample-weighted
    CHECK(agg.capabilities.at("C1").value == 0.5);
  }
}

TEST_CASE("compute_drift pairs axes and excludes the incomparable") {
  AggregateResult base = constant_aggregate(0.5);
  AggregateResult cand = constant_aggregate(0.45);

  DriftReport rep = compute_drift(base, cand, "m-base", "m-cand");
  CHECK(rep.baseline_model == "m-base");
  CHECK(rep.candidate_model == "m-cand");
  REQUIRE(rep.entries.size() == 1);  // only C1 is defined on both sides
  const DriftEntry& e = rep.entries[0];
  CHECK(e.capability == "C1");
  CHECK(e.delta_pct == doctest::Approx(-10.0));
  CHECK(e.regime == Regime::moderate);

  // the other 18 axes: no scores on both sides
  CHECK(rep.excluded.size() == 18);
  for (const auto& ex : rep.excluded)
    CHECK(ex.reason == "no scores (both models)");

  // group means: CAN defined from the single entry, WILL/HOW undefined
  REQUIRE(rep.group_means.count("CAN") == 1);
  CHECK(rep.group_means.at("CAN").defined);
  CHECK(rep.group_means.at("CAN").value == doctest::Approx(-10.0));
  CHECK_FALSE(rep.group_means.at("WILL").defined);
  CHECK_FALSE(rep.group_means.at("HOW").defined);
}

TEST_CASE("compute_drift flags zero baselines and one-sided holes") {
  AggregateResult base = constant_aggregate(0.0);
  AggregateResult cand = constant_aggregate(0.3);
  DriftReport rep = compute_drift(base, cand, "b", "c");
  CHECK(rep.entries.empty());
  bool saw_zero = false;
  for (const auto& ex : rep.excluded)
    if (ex.capability == "C1") {
      saw_zero = true;
      CHECK(ex.reason == "zero baseline");
    }
  CHECK(saw_zero);

  AggregateResult empty = constant_aggregate(0.5);
  empty.capabilities.at("C1").defined = false;
  DriftReport one_sided = compute_drift(empty, cand, "b", "c");
  for (const auto& ex : one_sided.excluded)
    if (ex.capability == "C1") CHECK(ex.reason == "no scores (baseline)");
}

TEST_CASE("drift entries follow taxonomy order") {
  Suite s = tiny_suite();
  s.benchmarks[0].capabilities = {"C1", "H6", "W2a"};
  s.benchmarks[0].capability_metrics = {{"C1", {"numeric_acc"}},
                                        {"H6", {"numeric_acc"}},
                                        {"W2a", {"numeric_acc"}}};
  auto agg_b = aggregate_scores(s, {rec("s1", 0, 0.8)});
  auto agg_c = aggregate_scores(s, {rec("s1", 0, 0.6)});
  DriftReport rep = compute_drift(agg_b, agg_c, "b", "c");
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].capability == "C1");
  CHECK(rep.entries[1].capability == "W2a");
  CHECK(rep.entries[2].capability == "H6");
  CHECK(rep.entries[1].group == CapabilityGroup::WILL);
}
