#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "capdrift/client/chat_client.hpp"
#include "capdrift/drift/aggregate.hpp"
#include "capdrift/judge/session.hpp"
#include "capdrift/metrics/style.hpp"
#include "capdrift/run/config.hpp"
#include "capdrift/suite/suite.hpp"

namespace capdrift {

// Run lifecycle, persisted in state.json and advanced monotonically:
//   created -> completed_inference -> completed_judging
//           -> completed_scoring -> reported
// A killed run resumes from the last completed phase; inside a phase,
// progress lives in the append-only logs themselves (transcripts, judgment
// log), so resumption is exact rather than restart-from-phase-start.
enum class RunPhase {
  created,
  completed_inference,
  completed_judging,
  completed_scoring,
  reported,
};

std::string run_phase_name(RunPhase p);
RunPhase parse_run_phase(const std::string& s);

struct RunPaths {
  std::filesystem::path root;

  std::filesystem::path config() const { return root / "config.json"; }
  std::filesystem::path state() const { return root / "state.json"; }
  std::filesystem::path suite_copy() const { return root / "suite"; }
  std::filesystem::path transcript(const std::string& benchmark) const {
    return root / (benchmark + ".jsonl");
  }
  std::filesystem::path judgments() const { return root / "judgments.jsonl"; }
  std::filesystem::path scores() const { return root / "scores.jsonl"; }
  std::filesystem::path budget() const { return root / "budget.json"; }
  std::filesystem::path capability_scores() const {
    return root / "capability_scores.json";
  }
  std::filesystem::path report_dir() const { return root / "report"; }
};

struct RunState {
  RunPhase phase = RunPhase::created;
};

RunState load_run_state(const RunPaths& paths);  // absent file -> created
void save_run_state(const RunPaths& paths, const RunState& state);

// Everything score_metric needs besides the sample and its completion.
// session may be null (no judge configured): judge metrics then exclude
// themselves, except the documented fast paths (equivalence string match,
// rule-level evidence overlap — a rule miss scores 0 with the fallback
// flag).
struct ScoreContext {
  const BenchmarkManifest* manifest = nullptr;
  JudgeSession* session = nullptr;
  const CodeExecConfig* code_exec = nullptr;
  const std::vector<HedgeEntry>* hedges = nullptr;
};

// One (sample, seed, metric) -> one record. Inference errors exclude every
// metric of that completion; per-metric gaps (missing meta, abstentions,
// inapplicable probes) map to excluded / not_applicable as documented on
// MetricStatus.
MetricRecord score_metric(const Sample& sample,
                          const CompletionRecord& completion,
                          const std::string& metric, const ScoreContext& ctx);

struct BenchmarkBudget {
  long total = 0;     // samples scored
  long affected = 0;  // samples with an inference error or any abstention
};

struct EvalScores {
  std::vector<MetricRecord> records;
  AggregateResult aggregate;
  std::map<std::string, BenchmarkBudget> budget;
};

// Scores a run entirely from its persisted transcripts (plus the judgment
// log through `session`), walking benchmarks / samples / seeds / metrics in
// canonical order — the order that makes a live judgment log
// byte-deterministic and a replay bit-exact. Throws RunError on gaps in the
// transcripts.
EvalScores score_from_logs(const Suite& suite, const std::vector<long>& seeds,
                           const RunPaths& paths, JudgeSession* session,
                           const CodeExecConfig& code_exec);

struct RunResult {
  std::string run_id;
  std::filesystem::path run_dir;
  std::filesystem::path baseline_dir;  // empty when no baseline endpoint
  bool drift_emitted = false;
  std::string note;  // set on no-baseline runs
  std::vector<std::string> budget_violations;
  bool budget_exceeded() const { return !budget_violations.empty(); }
};

// The full run pipeline: inference, judging, scoring, reporting, with
// resume-on-rerun semantics (an existing run directory for the same config
// picks up where it stopped). The effective config snapshot is written
// before the first network request; a baseline endpoint is evaluated as a
// self-contained sibling run "<run-id>-baseline" and the drift report lands
// under the candidate's report/.
RunResult execute_run(const RunConfig& cfg, const std::string& run_id_override);

struct ScoreRunOutcome {
  std::filesystem::path report_dir;
  std::vector<std::string> budget_violations;
  bool budget_exceeded() const { return !budget_violations.empty(); }
};

// Offline recomputation: rebuilds both runs' scores from their run
// directories alone (suite copy + transcripts + judgment logs + config
// snapshot; no network) and emits the drift artifacts. Byte-identical to
// the in-run report for the same pair. Throws RunError when either run has
// not finished judging ("phase too early").
ScoreRunOutcome score_run(const std::filesystem::path& run_dir,
                          const std::filesystem::path& baseline_run_dir,
                          const std::filesystem::path& report_dir_override);

// Shared helper: fraction strictly above the 5% budget threshold?
bool over_budget(const BenchmarkBudget& b);

}  // namespace capdrift
