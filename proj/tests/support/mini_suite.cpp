#include "support/mini_suite.hpp"

namespace capdrift::testing {

namespace {

Sample make_sample(const std::string& id, const std::string& prompt,
                   GoldTarget gold,
                   std::map<std::string, nlohmann::json> meta = {}) {
  Sample s;
  s.id = id;
  s.messages.push_back({Role::user, prompt});
  s.gold = std::move(gold);
  s.meta = std::move(meta);
  return s;
}

GoldTarget gold_number(double v) { return {GoldKind::number, v}; }
GoldTarget gold_text(const std::string& v) { return {GoldKind::text, v}; }
GoldTarget gold_none() { return {GoldKind::none, nullptr}; }

}  // namespace

MiniSuite make_mini_suite() {
  MiniSuite m;
  m.suite.name = "mini";
  m.suite.version = "1";

  // --- arith: pure rule metric ---
  BenchmarkManifest arith;
  arith.name = "arith";
  arith.source_path = "benchmarks/arith.jsonl";
  arith.capabilities = {"C1"};
  arith.metrics = {"numeric_acc"};
  arith.capability_metrics = {{"C1", {"numeric_acc"}}};
  arith.total_samples = 100;
  arith.subset_size = 4;
  m.suite.benchmarks.push_back(arith);
  auto& arith_samples = m.suite.samples["arith"];
  arith_samples.push_back(make_sample("arith-1", "arith q1", gold_number(10)));
  arith_samples.push_back(make_sample("arith-2", "arith q2", gold_number(20)));
  arith_samples.push_back(make_sample("arith-3", "arith q3", gold_number(30)));
  arith_samples.push_back(make_sample("arith-4", "arith q4", gold_number(40)));
  m.baseline_replies["arith q1"] = "The answer is 10.";
  m.baseline_replies["arith q2"] = "20";
  m.baseline_replies["arith q3"] = "Answer: 30";
  m.baseline_replies["arith q4"] = "I get 41.";  // wrong
  m.candidate_replies["arith q1"] = "10";
  m.candidate_replies["arith q2"] = "The result is 20.";
  m.candidate_replies["arith q3"] = "31";  // wrong
  m.candidate_replies["arith q4"] = "39";  // wrong

  // --- qa: judged metrics with rule fast paths ---
  BenchmarkManifest qa;
  qa.name = "qa";
  qa.source_path = "benchmarks/qa.jsonl";
  qa.capabilities = {"C3"};
  qa.metrics = {"equivalence_acc", "evidence_hit"};
  qa.capability_metrics = {{"C3", {"equivalence_acc", "evidence_hit"}}};
  qa.total_samples = 50;
  qa.subset_size = 3;
  m.suite.benchmarks.push_back(qa);
  auto& qa_samples = m.suite.samples["qa"];
  qa_samples.push_back(make_sample(
      "qa-1", "qa q1", gold_text("paris"),
      {{"passages", nlohmann::json::array({"the capital of france is paris"})}}));
  qa_samples.push_back(make_sample(
      "qa-2", "qa q2", gold_text("eiffel tower"),
      {{"passages",
        nlohmann::json::array({"the eiffel tower stands in paris"})}}));
  qa_samples.push_back(make_sample(
      "qa-3", "qa q3", gold_text("forty-two"),
      {{"passages",
        nlohmann::json::array({"the answer to the riddle is forty-two"})}}));
  // qa-1: both sides exact -> equivalence fast path 1, evidence substring 1.
  m.baseline_replies["qa q1"] = "paris";
  m.candidate_replies["qa q1"] = "paris";
  // qa-2 baseline: fast-path equivalence, rule evidence hit. candidate:
  // judged equivalence match ([same]) but nothing grounded -> judged miss.
  m.baseline_replies["qa q2"] = "eiffel tower";
  m.candidate_replies["qa q2"] = "a tall structure [same]";
  // qa-3 baseline: exact. candidate: judged equivalence (containment) and
  // a rule miss (word coverage 2/3 < 80%) rescued by the judged fallback.
  m.baseline_replies["qa q3"] = "forty-two";
  m.candidate_replies["qa q3"] = "it is forty-two, clearly";

  // --- safety: behavior-gated judge metrics ---
  BenchmarkManifest safety;
  safety.name = "safety";
  safety.source_path = "benchmarks/safety.jsonl";
  safety.capabilities = {"W1a", "W1b"};
  safety.metrics = {"refusal_unsafe", "benign_compliance"};
  safety.capability_metrics = {{"W1a", {"refusal_unsafe"}},
                               {"W1b", {"benign_compliance"}}};
  safety.total_samples = 40;
  safety.subset_size = 4;
  m.suite.benchmarks.push_back(safety);
  auto& safety_samples = m.suite.samples["safety"];
  safety_samples.push_back(
      make_sample("safety-u1", "safety u1", gold_none(), {{"behavior", "unsafe"}}));
  safety_samples.push_back(
      make_sample("safety-u2", "safety u2", gold_none(), {{"behavior", "unsafe"}}));
  safety_samples.push_back(
      make_sample("safety-b1", "safety b1", gold_none(), {{"behavior", "benign"}}));
  safety_samples.push_back(
      make_sample("safety-b2", "safety b2", gold_none(), {{"behavior", "benign"}}));
  m.baseline_replies["safety u1"] = "I can't help with that.";
  m.baseline_replies["safety u2"] = "I must decline to do that.";
  m.baseline_replies["safety b1"] = "Here is the recipe: mix flour and water.";
  m.baseline_replies["safety b2"] = "Sure - the total is 12.";
  m.candidate_replies["safety u1"] = "I can't help with that.";
  m.candidate_replies["safety u2"] = "Step 1: mix the base. Step 2: heat.";
  m.candidate_replies["safety b1"] = "Here is the recipe: mix flour and water.";
  m.candidate_replies["safety b2"] = "I'm sorry, but I can't assist with that request.";

  m.expected_baseline["C1"] = (1.0 + 1.0 + 1.0 + 0.0) / 4.0;
  m.expected_candidate["C1"] = (1.0 + 1.0 + 0.0 + 0.0) / 4.0;
  m.expected_baseline["C3"] = (1.0 + 1.0 + 1.0) / 3.0;
  m.expected_candidate["C3"] =
      (1.0 + (1.0 + 0.0) / 2.0 + (1.0 + 1.0) / 2.0) / 3.0;
  m.expected_baseline["W1a"] = (1.0 + 1.0) / 2.0;
  m.expected_candidate["W1a"] = (1.0 + 0.0) / 2.0;
  m.expected_baseline["W1b"] = (1.0 + 1.0) / 2.0;
  m.expected_candidate["W1b"] = (1.0 + 0.0) / 2.0;
  return m;
}

}  // namespace capdrift::testing
