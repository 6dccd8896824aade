#include <random>

#include "doctest.h"

#include "capdrift/drift/sweep.hpp"
#include "capdrift/report/emit.hpp"
#include "capdrift/report/svg.hpp"
#include "capdrift/util/fs.hpp"
#include "support/temp_dir.hpp"

using namespace capdrift;
using capdrift::testing::TempDir;

namespace {

DriftEntry entry(const char* cap, double base, double cand) {
  DriftEntry e;
  e.capability = cap;
  e.group = find_capability(cap)->group;
  e.baseline = base;
  e.candidate = cand;
  e.delta_pct = relative_deviation(cand, base);
  e.regime = classify_regime(e.delta_pct);
  return e;
}

DriftReport sample_report() {
  DriftReport rep;
  rep.baseline_model = "m-base";
  rep.candidate_model = "m-cand";
  rep.entries.push_back(entry("C1", 0.50, 0.50));   // 0%       None
  rep.entries.push_back(entry("C2", 0.50, 0.48));   // -4%      Minor
  rep.entries.push_back(entry("W2a", 0.50, 0.40));  // -20%     Major
  rep.entries.push_back(entry("H6", 0.50, 0.35));   // -30%     Catastrophic
  rep.excluded.push_back({"C3", "zero baseline"});
  rep.excluded.push_back({"H1", "no scores (candidate)"});
  GroupMean can;
  can.defined = true;
  can.value = -2.0;
  rep.group_means["CAN"] = can;
  rep.group_means["WILL"] = GroupMean{true, -20.0};
  rep.group_means["HOW"] = GroupMean{};  // undefined
  return rep;
}

// pull every vertex's (data-cap, data-ring, data-delta) out of an svg
std::vector<std::tuple<std::string, int, std::string>> vertices(
    const std::string& svg) {
  std::vector<std::tuple<std::string, int, std::string>> out;
  size_t at = 0;
  while ((at = svg.find("class=\"vertex\"", at)) != std::string::npos) {
    size_t end = svg.find('>', at);
    std::string tag = svg.substr(at, end - at);
    auto attr = [&](const char* name) {
      std::string key = std::string(name) + "=\"";
      size_t b = tag.find(key);
      REQUIRE(b != std::string::npos);
      b += key.size();
      return tag.substr(b, tag.find('"', b) - b);
    };
    out.emplace_back(attr("data-cap"), std::stoi(attr("data-ring")),
                     attr("data-delta"));
    at = end;
  }
  return out;
}

}  // namespace

TEST_CASE("drift json carries entries, exclusions, and null group means") {
  nlohmann::json j = drift_report_to_json(sample_report());
  CHECK(j.at("baseline") == "m-base");
  CHECK(j.at("candidate") == "m-cand");
  REQUIRE(j.at("entries").size() == 4);
  CHECK(j.at("entries")[1].at("capability") == "C2");
  CHECK(j.at("entries")[1].at("regime") == "Minor");
  CHECK(j.at("entries")[1].at("delta_pct").get<double>() ==
        doctest::Approx(-4.0));
  CHECK(j.at("excluded")[0].at("reason") == "zero baseline");
  CHECK(j.at("group_means").at("CAN").get<double>() == -2.0);
  CHECK(j.at("group_means").at("HOW").is_null());
}

TEST_CASE("drift csv rows") {
  std::string csv = drift_report_to_csv(sample_report());
  CHECK(csv.find("capability,group,delta_pct,regime,reason\n") == 0);
  CHECK(csv.find("\nC2,CAN,-4,Minor,\n") != std::string::npos);
  CHECK(csv.find("\nC3,CAN,,excluded,zero baseline\n") != std::string::npos);
  CHECK(csv.find("\nH6,HOW,-30,Catastrophic,\n") != std::string::npos);
  // axes absent from the report produce no row
  CHECK(csv.find("\nC4,") == std::string::npos);
}

TEST_CASE("spider svg puts every vertex on its regime ring") {
  DriftReport rep = sample_report();
  std::string svg = spider_svg(rep);
  CHECK(svg.find("<svg") != std::string::npos);
  auto vs = vertices(svg);
  REQUIRE(vs.size() == rep.entries.size());
  for (size_t i = 0; i < vs.size(); ++i) {
    CHECK(std::get<0>(vs[i]) == rep.entries[i].capability);
    CHECK(std::get<1>(vs[i]) == regime_index(rep.entries[i].regime));
  }
}

TEST_CASE("spider svg falls back to bars under 3 axes") {
  DriftReport rep = sample_report();
  rep.entries.resize(2);
  std::string svg = spider_svg(rep);
  CHECK(svg.find("severity bars") != std::string::npos);
  auto vs = vertices(svg);
  REQUIRE(vs.size() == 2);
  CHECK(std::get<0>(vs[0]) == "C1");
  CHECK(std::get<1>(vs[1]) == regime_index(Regime::minor));
}

TEST_CASE("capability scores json distinguishes defined from undefined") {
  Suite s;
  BenchmarkManifest bm;
  bm.name = "b";
  bm.source_path = "benchmarks/b.jsonl";
  bm.capabilities = {"C1"};
  bm.metrics = {"numeric_acc"};
  bm.capability_metrics = {{"C1", {"numeric_acc"}}};
  bm.total_samples = 1;
  bm.subset_size = 1;
  s.benchmarks.push_back(bm);
  MetricRecord r;
  r.benchmark = "b";
  r.sample_id = "s1";
  r.metric = "numeric_acc";
  r.value = 0.75;
  AggregateResult agg = aggregate_scores(s, {r});

  nlohmann::json j = capability_scores_to_json("model-x", agg);
  CHECK(j.at("model") == "model-x");
  CHECK(j.at("capabilities").at("C1").at("value").get<double>() == 0.75);
  CHECK(j.at("capabilities").at("C2").at("value").is_null());
  CHECK(j.at("capabilities").at("C2").contains("reason"));
}

TEST_CASE("compute_sweep matches the hand oracle and sorts by w") {
  SweepTable t;
  t.in_domain_metric = "task_acc";
  t.oob = {{"C1", 0.5}, {"C2", 0.8}, {"C3", 0.0}};  // C3 skipped (zero oob)
  t.reference_in_domain = 0.6;

  SweepTable::Point late;
  late.recipe_id = "w0.8";
  late.w = 0.8;
  late.capabilities = {{"C1", 0.5}, {"C2", 0.8}, {"C3", 0.7}};
  late.in_domain = 0.6;
  SweepTable::Point early;
  early.recipe_id = "w0.2";
  early.w = 0.2;
  early.capabilities = {{"C1", 0.45}, {"C2", 0.8}, {"C3", 0.1}};
  early.in_domain = 0.3;
  t.points = {late, early};  // deliberately out of order

  auto pts = compute_sweep(t);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].recipe_id == "w0.2");  // sorted by w
  CHECK(pts[0].stability == doctest::Approx((-10.0 + 0.0) / 2.0));
  CHECK(pts[0].plasticity == doctest::Approx(-50.0));
  CHECK(pts[1].stability == doctest::Approx(0.0));
  CHECK(pts[1].plasticity == doctest::Approx(0.0));

  SUBCASE("zero reference is fatal") {
    t.reference_in_domain = 0.0;
    CHECK_THROWS(compute_sweep(t));
  }
  SUBCASE("a point sharing no nonzero capability is fatal") {
    t.points[0].capabilities = {{"C3", 0.2}};
    CHECK_THROWS(compute_sweep(t));
  }
}

TEST_CASE("sweep table json round trip and fatal holes") {
  nlohmann::json j{
      {"in_domain_metric", "acc"},
      {"oob", {{"C1", 0.5}}},
      {"reference", {{"in_domain", 0.7}}},
      {"points",
       nlohmann::json::array(
           {{{"recipe_id", "a"},
             {"w", 0.5},
             {"capabilities", {{"C1", 0.4}}},
             {"in_domain", 0.6}}})}};
  SweepTable t = sweep_table_from_json(j);
  CHECK(t.points.size() == 1);
  CHECK(sweep_table_from_json(sweep_table_to_json(t)).points[0].recipe_id ==
        "a");

  nlohmann::json hole = j;
  hole["points"][0].erase("in_domain");
  CHECK_THROWS_WITH_AS(sweep_table_from_json(hole),
                       doctest::Contains("lacks in-domain"),
                       std::runtime_error);
  nlohmann::json no_ref = j;
  no_ref.erase("reference");
  CHECK_THROWS(sweep_table_from_json(no_ref));
}

TEST_CASE("sweep csv and svg") {
  std::vector<SweepPoint> pts{{"a", 0.25, -3.5, -12.0}};
  CHECK(sweep_to_csv(pts) ==
        "recipe_id,w,stability,plasticity\na,0.25,-3.5,-12\n");
  std::string svg = sweep_svg(pts);
  CHECK(svg.find("data-series") != std::string::npos);
  CHECK(svg.find("data-w=\"0.25\"") != std::string::npos);
}

TEST_CASE("emitted artifacts are byte deterministic") {
  TempDir tmp("emit");
  DriftReport rep = sample_report();
  emit_drift_artifacts(tmp / "r1", rep);
  emit_drift_artifacts(tmp / "r2", rep);
  for (const char* f : {"drift.json", "drift.csv", "spider.svg"}) {
    CHECK(read_file(tmp / "r1" / f) == read_file(tmp / "r2" / f));
    CHECK_FALSE(read_file(tmp / "r1" / f).empty());
  }
  std::vector<SweepPoint> pts{{"a", 0.25, -3.5, -12.0}, {"b", 0.5, -1.0, -4.0}};
  emit_sweep_artifacts(tmp / "s1", pts);
  emit_sweep_artifacts(tmp / "s2", pts);
  CHECK(read_file(tmp / "s1" / "sweep.csv") ==
        read_file(tmp / "s2" / "sweep.csv"));
  CHECK(read_file(tmp / "s1" / "sweep.svg") ==
        read_file(tmp / "s2" / "sweep.svg"));
}
