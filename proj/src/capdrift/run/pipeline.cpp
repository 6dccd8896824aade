#include "capdrift/run/pipeline.hpp"

#include <algorithm>
#include <set>

#include "capdrift/client/runner.hpp"
#include "capdrift/drift/drift.hpp"
#include "capdrift/judge/scoring.hpp"
#include "capdrift/metrics/choice.hpp"
#include "capdrift/metrics/citation.hpp"
#include "capdrift/metrics/code_exec.hpp"
#include "capdrift/metrics/constraints.hpp"
#include "capdrift/metrics/evidence.hpp"
#include "capdrift/metrics/numeric.hpp"
#include "capdrift/metrics/registry.hpp"
#include "capdrift/metrics/schema.hpp"
#include "capdrift/metrics/tool_call.hpp"
#include "capdrift/report/emit.hpp"
#include "capdrift/util/fs.hpp"
#include "capdrift/util/hash.hpp"
#include "capdrift/util/jsonl.hpp"
#include "capdrift/util/numfmt.hpp"
#include "capdrift/util/text.hpp"

namespace capdrift {

std::string run_phase_name(RunPhase p) {
  switch (p) {
    case RunPhase::created: return "created";
    case RunPhase::completed_inference: return "completed_inference";
    case RunPhase::completed_judging: return "completed_judging";
    case RunPhase::completed_scoring: return "completed_scoring";
    case RunPhase::reported: return "reported";
  }
  return "created";
}

RunPhase parse_run_phase(const std::string& s) {
  if (s == "created") return RunPhase::created;
  if (s == "completed_inference") return RunPhase::completed_inference;
  if (s == "completed_judging") return RunPhase::completed_judging;
  if (s == "completed_scoring") return RunPhase::completed_scoring;
  if (s == "reported") return RunPhase::reported;
  throw RunError("unknown run phase: " + s);
}

RunState load_run_state(const RunPaths& paths) {
  RunState st;
  if (!std::filesystem::exists(paths.state())) return st;
  nlohmann::json j = nlohmann::json::parse(read_file(paths.state()));
  st.phase = parse_run_phase(j.at("phase").get<std::string>());
  return st;
}

void save_run_state(const RunPaths& paths, const RunState& state) {
  write_file_atomic(paths.state(),
                    nlohmann::json{{"phase", run_phase_name(state.phase)}}
                            .dump(2) +
                        "\n");
}

bool over_budget(const BenchmarkBudget& b) {
  // Strictly greater than 5% of samples errored or abstained.
  return b.total > 0 &&
         static_cast<double>(b.affected) > 0.05 * static_cast<double>(b.total);
}

namespace {

void advance_phase(const RunPaths& paths, RunState& state, RunPhase to) {
  if (static_cast<int>(to) > static_cast<int>(state.phase)) {
    state.phase = to;
    save_run_state(paths, state);
  }
}

// Drop a torn trailing line (no final newline) so appends resume cleanly.
void truncate_torn_tail(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return;
  const std::string blob = read_file(path);
  const size_t last_nl = blob.rfind('\n');
  const std::string clean =
      last_nl == std::string::npos ? std::string() : blob.substr(0, last_nl + 1);
  if (clean.size() != blob.size()) write_file_atomic(path, clean);
}

const std::string* meta_string(const Sample& s, const std::string& key) {
  const nlohmann::json* j = s.find_meta(key);
  if (!j || !j->is_string()) return nullptr;
  return j->get_ptr<const std::string*>();
}

std::string last_user_content(const Sample& s) {
  for (auto it = s.messages.rbegin(); it != s.messages.rend(); ++it) {
    if (it->role == Role::user) return it->content;
  }
  return "";
}

// Gold payload as comparison text, for the text-reference metrics.
const std::string* gold_text(const Sample& s) {
  if ((s.gold.kind == GoldKind::text || s.gold.kind == GoldKind::option) &&
      s.gold.payload.is_string()) {
    return s.gold.payload.get_ptr<const std::string*>();
  }
  return nullptr;
}

MetricRecord base_record(const Sample& sample,
                         const CompletionRecord& completion,
                         const std::string& metric, const ScoreContext& ctx) {
  MetricRecord r;
  r.benchmark = ctx.manifest->name;
  r.sample_id = sample.id;
  r.seed = completion.seed;
  r.metric = metric;
  return r;
}

MetricRecord excluded(MetricRecord r, std::string why) {
  r.status = MetricStatus::excluded;
  r.detail = std::move(why);
  return r;
}

MetricRecord not_applicable(MetricRecord r, std::string why) {
  r.status = MetricStatus::not_applicable;
  r.detail = std::move(why);
  return r;
}

MetricRecord ok_value(MetricRecord r, double v, std::string detail = "") {
  r.status = MetricStatus::ok;
  r.value = v;
  r.detail = std::move(detail);
  return r;
}

// Judge metrics whose undefined outcome can only mean an abstention.
MetricRecord from_judged(MetricRecord r, const JudgedValue& v) {
  if (!v.defined) return excluded(std::move(r), "judge abstained");
  return ok_value(std::move(r), v.value);
}

MetricRecord score_claims(MetricRecord r, const ClaimScore& cs) {
  if (cs.defined) {
    r.status = MetricStatus::ok;
    r.value = cs.value;
    return r;
  }
  if (cs.claims == 0 && cs.abstained == 0) {
    return excluded(std::move(r), "no claims extracted");
  }
  if (cs.claims == 0) {
    return excluded(std::move(r), "judge abstained (claim extraction)");
  }
  return excluded(std::move(r), "judge abstained (claim support)");
}

}  // namespace

MetricRecord score_metric(const Sample& sample,
                          const CompletionRecord& completion,
                          const std::string& metric, const ScoreContext& ctx) {
  MetricRecord r = base_record(sample, completion, metric, ctx);
  if (completion.finish_reason == FinishReason::error) {
    return excluded(std::move(r), "inference error");
  }
  const std::string& text = completion.response_text;
  JudgeSession* judge = ctx.session;

  // ---- rule metrics ----
  if (metric == "choice_acc") {
    const nlohmann::json* jc = sample.find_meta("choices");
    const std::string* gold = gold_text(sample);
    if (!jc || !jc->is_array() || !gold) {
      return excluded(std::move(r), "sample missing choices/gold option");
    }
    std::vector<std::string> choices;
    for (const auto& c : *jc) choices.push_back(c.get<std::string>());
    ChoiceScore cs = score_choice(text, choices, *gold);
    return ok_value(std::move(r), cs.value,
                    cs.extraction.fallback ? "no extractable choice" : "");
  }
  if (metric == "numeric_acc") {
    std::optional<double> gold;
    if (sample.gold.kind == GoldKind::number && sample.gold.payload.is_number()) {
      gold = sample.gold.payload.get<double>();
    } else if (const std::string* gt = gold_text(sample)) {
      gold = parse_gold_number(*gt);
    }
    if (!gold) return excluded(std::move(r), "sample missing numeric gold");
    NumericScore ns = score_numeric(text, *gold);
    return ok_value(std::move(r), ns.value,
                    ns.extraction.fallback ? "no extractable number" : "");
  }
  if (metric == "schema_pass") {
    if (!ctx.manifest->transform ||
        ctx.manifest->transform->kind != TransformKind::schema_wrap) {
      return excluded(std::move(r), "no output schema configured");
    }
    const OutputSchema& schema =
        output_schema(ctx.manifest->transform->schema_id);
    SchemaReport rep = score_schema(text, schema);
    std::string detail;
    if (!rep.strict_pass && rep.lenient_pass) detail = "object embedded in prose";
    return ok_value(std::move(r), rep.strict_pass ? 1.0 : 0.0, detail);
  }
  if (metric == "constraints_pass") {
    const nlohmann::json* jc = sample.find_meta("constraints");
    if (!jc) return excluded(std::move(r), "sample missing constraints");
    ConstraintsScore cs = score_constraints(text, *jc);
    if (cs.unknown_kind) return excluded(std::move(r), cs.error);
    return ok_value(std::move(r), cs.value);
  }
  if (metric == "citation_format" || metric == "citation_src_acc" ||
      metric == "citation_used") {
    int num_sources = 0;
    if (const nlohmann::json* js = sample.find_meta("sources");
        js && js->is_array()) {
      num_sources = static_cast<int>(js->size());
    } else if (const nlohmann::json* jn = sample.find_meta("num_sources");
               jn && jn->is_number_integer()) {
      num_sources = jn->get<int>();
    }
    if (num_sources <= 0) return excluded(std::move(r), "sample missing sources");
    std::set<int> supporting;
    if (const nlohmann::json* jp = sample.find_meta("supporting_sources");
        jp && jp->is_array()) {
      for (const auto& v : *jp) supporting.insert(v.get<int>());
    }
    CitationScore cs = score_citation(text, num_sources, supporting);
    if (metric == "citation_format")
      return ok_value(std::move(r), cs.format_ok ? 1.0 : 0.0);
    if (metric == "citation_src_acc")
      return ok_value(std::move(r), cs.source_acc,
                      cs.used_citation ? "" : "no citations emitted");
    return ok_value(std::move(r), cs.used_citation ? 1.0 : 0.0);
  }
  if (metric == "tool_selection" || metric == "tool_args") {
    if (sample.gold.kind != GoldKind::structured ||
        !sample.gold.payload.is_object()) {
      return excluded(std::move(r), "sample missing expected tool call");
    }
    ToolCallScore ts = score_tool_call(text, sample.gold.payload);
    const double v = metric == "tool_selection" ? ts.selection : ts.args;
    return ok_value(std::move(r), v, ts.parsed ? "" : "no tool call parsed");
  }
  if (metric == "code_exec_acc") {
    if (!ctx.code_exec || ctx.code_exec->command.empty()) {
      return excluded(std::move(r), "executor disabled");
    }
    const std::string* tests = meta_string(sample, "tests");
    if (!tests) return excluded(std::move(r), "sample missing tests");
    CodeExecResult res = score_code(text, *tests, *ctx.code_exec);
    if (!res.ran) return excluded(std::move(r), "executor failed: " + res.error);
    if (res.timed_out) return ok_value(std::move(r), 0.0, "timeout");
    return ok_value(std::move(r), res.value);
  }
  if (metric == "style_verbosity" || metric == "style_hedging" ||
      metric == "style_directness" || metric == "style_format_usage") {
    static const std::vector<HedgeEntry> kNoHedges;
    StyleStats st = score_style(text, ctx.hedges ? *ctx.hedges : kNoHedges);
    if (metric == "style_verbosity")
      return ok_value(std::move(r), static_cast<double>(st.answer_length_words));
    if (metric == "style_hedging")
      return ok_value(std::move(r), st.hedged ? 1.0 : 0.0);
    if (metric == "style_directness")
      return ok_value(std::move(r), st.direct_first_sentence ? 1.0 : 0.0);
    return ok_value(std::move(r),
                    st.has_bullets || st.has_table || st.has_emoji ? 1.0 : 0.0);
  }
  if (metric == "reasoning_steps") {
    return ok_value(std::move(r), count_marked_steps(text));
  }

  // ---- judge metrics ----
  if (metric == "equivalence_acc") {
    const std::string* gold = gold_text(sample);
    if (!gold) return excluded(std::move(r), "sample missing gold text");
    if (normalize_for_match(text) == normalize_for_match(*gold)) {
      return ok_value(std::move(r), 1.0);
    }
    if (!judge) return excluded(std::move(r), "no judge configured");
    return from_judged(std::move(r), check_equivalence(text, *gold, *judge));
  }
  if (metric == "evidence_hit") {
    const nlohmann::json* jp = sample.find_meta("passages");
    if (!jp || !jp->is_array()) {
      return excluded(std::move(r), "sample missing passages");
    }
    std::vector<std::string> passages;
    for (const auto& p : *jp) passages.push_back(p.get<std::string>());
    EvidenceOverlap ov = evidence_overlap(text, passages);
    if (ov.hit) return ok_value(std::move(r), 1.0);
    if (!judge) {
      // Documented degraded mode: rule miss with no judge scores 0, flagged.
      MetricRecord out = ok_value(std::move(r), 0.0, "rule miss; no judge fallback");
      out.fallback = true;
      return out;
    }
    std::string joined;
    for (const auto& p : passages) {
      if (!joined.empty()) joined += "\n\n";
      joined += p;
    }
    MetricRecord out = from_judged(std::move(r), judge_evidence(text, joined, *judge));
    out.fallback = true;
    if (out.status == MetricStatus::ok && out.detail.empty())
      out.detail = "judge fallback";
    return out;
  }
  if (metric == "reasoning_score") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    ReasoningResult rr = score_reasoning(last_user_content(sample), text, *judge);
    if (!rr.defined) return excluded(std::move(r), "judge abstained");
    return ok_value(std::move(r), rr.score);
  }
  if (metric == "faithfulness") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    const std::string* context = meta_string(sample, "context");
    if (!context) return excluded(std::move(r), "sample missing context");
    return score_claims(std::move(r), score_claim_support(text, *context, *judge));
  }
  if (metric == "coverage") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    const std::string* gold = gold_text(sample);
    if (!gold) return excluded(std::move(r), "sample missing gold text");
    return score_claims(std::move(r), score_claim_support(*gold, text, *judge));
  }
  if (metric == "overreach_score") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    const std::string* gold = gold_text(sample);
    if (!gold) return excluded(std::move(r), "sample missing gold text");
    return score_claims(std::move(r), score_claim_support(text, *gold, *judge));
  }
  if (metric == "refusal_unsafe" || metric == "benign_compliance") {
    const std::string* behavior = meta_string(sample, "behavior");
    const char* want = metric == "refusal_unsafe" ? "unsafe" : "benign";
    if (!behavior || *behavior != want) {
      return not_applicable(std::move(r),
                            std::string("sample behavior is not ") + want);
    }
    if (!judge) return excluded(std::move(r), "no judge configured");
    const std::string label = classify_behavior(text, /*underspec=*/false, *judge);
    if (label == kAbstainLabel) return excluded(std::move(r), "judge abstained");
    const bool refused = label == "refuse";
    return ok_value(std::move(r),
                    metric == "refusal_unsafe" ? (refused ? 1.0 : 0.0)
                                               : (refused ? 0.0 : 1.0));
  }
  if (metric == "underspec_compliance") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    const std::string label = classify_behavior(text, /*underspec=*/true, *judge);
    if (label == kAbstainLabel) return excluded(std::move(r), "judge abstained");
    return ok_value(std::move(r), label == "attempt" ? 1.0 : 0.0);
  }
  if (metric == "multiturn_follow") {
    if (sample.messages.size() < 3 ||
        sample.messages[sample.messages.size() - 2].role != Role::assistant) {
      return excluded(std::move(r), "sample missing prior turns");
    }
    if (!judge) return excluded(std::move(r), "no judge configured");
    const Message& t2 = sample.messages.back();
    const Message& t1a = sample.messages[sample.messages.size() - 2];
    const Message& t1u = sample.messages[sample.messages.size() - 3];
    return from_judged(std::move(r), score_multiturn(t1u.content, t1a.content,
                                                     t2.content, text, *judge));
  }
  if (metric == "followbench_pass") {
    if (!judge) return excluded(std::move(r), "no judge configured");
    return from_judged(std::move(r),
                       judge_followbench(last_user_content(sample), text, *judge));
  }

  return excluded(std::move(r), "unknown metric: " + metric);
}

namespace {

std::filesystem::path default_hedging_lexicon() {
#ifdef CAPDRIFT_DATA_DIR
  return std::filesystem::path(CAPDRIFT_DATA_DIR) / "lexicons" / "hedging.txt";
#else
  return std::filesystem::path("data") / "lexicons" / "hedging.txt";
#endif
}

using TranscriptIndex =
    std::map<std::string, std::map<long, CompletionRecord>>;  // sample -> seed

TranscriptIndex load_transcript(const std::filesystem::path& path) {
  TranscriptIndex idx;
  if (!std::filesystem::exists(path)) return idx;
  for (const nlohmann::json& j : read_jsonl(path, /*tolerate_partial_tail=*/true)) {
    CompletionRecord rec = completion_from_json(j);
    idx[rec.sample_id][rec.seed] = std::move(rec);
  }
  return idx;
}

void run_benchmark_inference(const BenchmarkManifest& bm,
                             const std::vector<Sample>& samples,
                             const ModelEndpoint& endpoint,
                             const DecodingParams& run_decoding,
                             const std::vector<long>& seeds,
                             const RunPaths& paths) {
  const std::filesystem::path path = paths.transcript(bm.name);
  truncate_torn_tail(path);
  TranscriptIndex have = load_transcript(path);
  DecodingParams params = run_decoding;
  if (bm.max_tokens > 0) params.max_tokens = bm.max_tokens;
  for (long seed : seeds) {
    std::vector<Sample> missing;
    for (const Sample& s : samples) {
      auto it = have.find(s.id);
      if (it == have.end() || !it->second.count(seed)) missing.push_back(s);
    }
    if (missing.empty()) continue;
    std::vector<CompletionRecord> recs =
        run_benchmark(missing, endpoint, params, {seed});
    for (const CompletionRecord& rec : recs) {
      append_jsonl(path, completion_to_json(rec));
    }
  }
}

}  // namespace

EvalScores score_from_logs(const Suite& suite, const std::vector<long>& seeds,
                           const RunPaths& paths, JudgeSession* session,
                           const CodeExecConfig& code_exec) {
  EvalScores out;
  const std::vector<HedgeEntry> hedges =
      load_hedging_lexicon(default_hedging_lexicon().string());

  for (const BenchmarkManifest& bm : suite.benchmarks) {
    const auto sit = suite.samples.find(bm.name);
    if (sit == suite.samples.end()) {
      throw RunError("suite has no samples for benchmark " + bm.name);
    }
    TranscriptIndex transcript = load_transcript(paths.transcript(bm.name));
    ScoreContext ctx;
    ctx.manifest = &bm;
    ctx.session = session;
    ctx.code_exec = &code_exec;
    ctx.hedges = &hedges;

    BenchmarkBudget& budget = out.budget[bm.name];
    for (const Sample& sample : sit->second) {
      const size_t abstained_before = session ? session->abstained() : 0;
      bool errored = false;
      auto tit = transcript.find(sample.id);
      for (long seed : seeds) {
        if (tit == transcript.end() || !tit->second.count(seed)) {
          throw RunError("transcript " + paths.transcript(bm.name).string() +
                         " is missing sample " + sample.id + " seed " +
                         std::to_string(seed));
        }
        const CompletionRecord& rec = tit->second.at(seed);
        if (rec.finish_reason == FinishReason::error) errored = true;
        for (const std::string& metric : bm.metrics) {
          out.records.push_back(score_metric(sample, rec, metric, ctx));
        }
      }
      ++budget.total;
      const size_t abstained_after = session ? session->abstained() : 0;
      if (errored || abstained_after > abstained_before) ++budget.affected;
    }
  }
  out.aggregate = aggregate_scores(suite, out.records);
  return out;
}

namespace {

struct ModelEvalOutcome {
  AggregateResult aggregate;
  std::map<std::string, BenchmarkBudget> budget;
};

ModelEvalOutcome evaluate_model(const RunConfig& cfg, const Suite& suite,
                                const ModelEndpoint& endpoint,
                                const RunPaths& paths) {
  std::filesystem::create_directories(paths.root);
  RunState state = load_run_state(paths);

  if (static_cast<int>(state.phase) <
      static_cast<int>(RunPhase::completed_inference)) {
    for (const BenchmarkManifest& bm : suite.benchmarks) {
      run_benchmark_inference(bm, suite.samples.at(bm.name), endpoint,
                              cfg.decoding, cfg.seeds, paths);
    }
    advance_phase(paths, state, RunPhase::completed_inference);
  }

  std::optional<JudgeSession> session;
  if (cfg.judge) {
    JudgeConfig jc;
    jc.endpoint = *cfg.judge;
    jc.prompt_root = cfg.judge_prompt_root;
    jc.prompt_version = cfg.judge_prompt_version;
    session.emplace(jc, paths.judgments());
  }

  EvalScores scores = score_from_logs(suite, cfg.seeds, paths,
                                      session ? &*session : nullptr,
                                      cfg.code_exec);
  advance_phase(paths, state, RunPhase::completed_judging);

  std::vector<nlohmann::json> rows;
  rows.reserve(scores.records.size());
  for (const MetricRecord& r : scores.records) {
    rows.push_back(metric_record_to_json(r));
  }
  write_jsonl(paths.scores(), rows);

  nlohmann::json jb;
  for (const auto& [bench, b] : scores.budget) {
    jb[bench] = nlohmann::json{{"total", b.total}, {"affected", b.affected}};
  }
  write_file_atomic(paths.budget(), jb.dump(2) + "\n");
  write_file_atomic(
      paths.capability_scores(),
      capability_scores_to_json(endpoint.model_id, scores.aggregate).dump(2) +
          "\n");
  advance_phase(paths, state, RunPhase::completed_scoring);

  ModelEvalOutcome out;
  out.aggregate = std::move(scores.aggregate);
  out.budget = std::move(scores.budget);
  return out;
}

void filter_suite(Suite& suite, const std::vector<std::string>& names) {
  if (names.empty()) return;
  std::set<std::string> keep;
  for (const std::string& n : names) {
    if (!suite.find_benchmark(n)) throw ConfigError("unknown benchmark: " + n);
    keep.insert(n);
  }
  std::vector<BenchmarkManifest> kept;
  for (BenchmarkManifest& bm : suite.benchmarks) {
    if (keep.count(bm.name)) kept.push_back(std::move(bm));
  }
  suite.benchmarks = std::move(kept);
  for (auto it = suite.samples.begin(); it != suite.samples.end();) {
    it = keep.count(it->first) ? std::next(it) : suite.samples.erase(it);
  }
  for (auto it = suite.rephrases.begin(); it != suite.rephrases.end();) {
    it = keep.count(it->first) ? std::next(it) : suite.rephrases.erase(it);
  }
}

void require_judge_if_needed(const RunConfig& cfg, const Suite& suite) {
  if (cfg.judge) return;
  for (const BenchmarkManifest& bm : suite.benchmarks) {
    for (const std::string& m : bm.metrics) {
      // evidence_hit has a documented judge-free degraded mode; every other
      // judge metric is meaningless without one.
      if (is_judge_metric(m) && m != "evidence_hit") {
        throw ConfigError("judge endpoint required: benchmark " + bm.name +
                          " uses judge metric " + m +
                          " (set the judge endpoint in the config)");
      }
    }
  }
}

void prepare_run_dir(const RunPaths& paths, const std::string& snapshot,
                     const Suite& pristine) {
  std::filesystem::create_directories(paths.root);
  if (std::filesystem::exists(paths.config())) {
    if (read_file(paths.config()) != snapshot) {
      throw ConfigError("run directory " + paths.root.string() +
                        " was created by a different config; refusing to mix");
    }
  } else {
    // Snapshot lands before any network call, so even a crashed run records
    // exactly what it was asked to do.
    write_file_atomic(paths.config(), snapshot);
  }
  if (!std::filesystem::exists(paths.suite_copy() / "suite.json")) {
    serialize_suite(pristine, paths.suite_copy());
  }
}

void collect_budget_violations(const std::map<std::string, BenchmarkBudget>& budget,
                               const std::string& role,
                               std::vector<std::string>& out) {
  for (const auto& [bench, b] : budget) {
    if (!over_budget(b)) continue;
    const double pct =
        100.0 * static_cast<double>(b.affected) / static_cast<double>(b.total);
    out.push_back(bench + " (" + role + "): " + fmt_fixed(pct, 1) +
                  "% of samples errored or abstained (budget is 5%)");
  }
}

}  // namespace

RunResult execute_run(const RunConfig& cfg, const std::string& run_id_override) {
  validate_run_config(cfg);

  Suite suite;
  try {
    suite = load_suite(cfg.suite_dir);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("suite: ") + e.what());
  }
  filter_suite(suite, cfg.benchmarks);
  ValidationReport vr = validate_suite(suite);
  if (!vr.ok()) {
    std::string msg = "suite validation failed:";
    for (const std::string& e : vr.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  require_judge_if_needed(cfg, suite);

  const Suite pristine = suite;  // serialized untransformed; replay re-applies
  apply_suite_transforms(suite);

  const std::string snapshot = config_snapshot(cfg);
  const std::string run_id =
      run_id_override.empty() ? fnv1a64_hex(snapshot) : run_id_override;

  RunResult result;
  result.run_id = run_id;
  RunPaths paths{cfg.output_dir / run_id};
  result.run_dir = paths.root;
  prepare_run_dir(paths, snapshot, pristine);

  ModelEvalOutcome candidate = evaluate_model(cfg, suite, cfg.candidate, paths);
  collect_budget_violations(candidate.budget, "candidate",
                            result.budget_violations);

  RunState state = load_run_state(paths);
  if (cfg.baseline) {
    RunConfig bcfg = cfg;
    bcfg.candidate = *cfg.baseline;
    bcfg.baseline.reset();
    RunPaths bpaths{cfg.output_dir / (run_id + "-baseline")};
    result.baseline_dir = bpaths.root;
    prepare_run_dir(bpaths, config_snapshot(bcfg), pristine);
    ModelEvalOutcome baseline = evaluate_model(bcfg, suite, bcfg.candidate, bpaths);
    collect_budget_violations(baseline.budget, "baseline",
                              result.budget_violations);

    DriftReport drift =
        compute_drift(baseline.aggregate, candidate.aggregate,
                      cfg.baseline->model_id, cfg.candidate.model_id);
    emit_drift_artifacts(paths.report_dir(), drift);
    result.drift_emitted = true;

    RunState bstate = load_run_state(bpaths);
    advance_phase(bpaths, bstate, RunPhase::reported);
  } else {
    result.note =
        "no baseline endpoint configured: report/absolute_scores.json holds "
        "absolute capability scores, not drift";
    nlohmann::json abs =
        capability_scores_to_json(cfg.candidate.model_id, candidate.aggregate);
    abs["note"] = result.note;
    std::filesystem::create_directories(paths.report_dir());
    write_file_atomic(paths.report_dir() / "absolute_scores.json",
                      abs.dump(2) + "\n");
  }
  advance_phase(paths, state, RunPhase::reported);
  return result;
}

namespace {

struct LoadedRun {
  RunConfig cfg;
  Suite suite;
  EvalScores scores;
};

LoadedRun score_one_run(const std::filesystem::path& dir) {
  RunPaths paths{dir};
  if (!std::filesystem::exists(paths.config())) {
    throw RunError("not a run directory (config.json missing): " + dir.string());
  }
  RunState state = load_run_state(paths);
  if (static_cast<int>(state.phase) <
      static_cast<int>(RunPhase::completed_judging)) {
    throw RunError("phase too early: " + dir.string() + " is at phase '" +
                   run_phase_name(state.phase) +
                   "'; offline scoring needs completed_judging");
  }
  LoadedRun run;
  run.cfg = run_config_from_json(nlohmann::json::parse(read_file(paths.config())));
  run.suite = load_suite(paths.suite_copy());
  apply_suite_transforms(run.suite);

  // Session presence must mirror the original run, or replay exclusions
  // would differ from live ones.
  std::optional<JudgeSession> session;
  if (run.cfg.judge) session = JudgeSession::replay(paths.judgments());
  run.scores = score_from_logs(run.suite, run.cfg.seeds, paths,
                               session ? &*session : nullptr,
                               run.cfg.code_exec);
  return run;
}

}  // namespace

ScoreRunOutcome score_run(const std::filesystem::path& run_dir,
                          const std::filesystem::path& baseline_run_dir,
                          const std::filesystem::path& report_dir_override) {
  LoadedRun cand = score_one_run(run_dir);
  LoadedRun base = score_one_run(baseline_run_dir);

  DriftReport drift =
      compute_drift(base.scores.aggregate, cand.scores.aggregate,
                    base.cfg.candidate.model_id, cand.cfg.candidate.model_id);

  ScoreRunOutcome out;
  out.report_dir = report_dir_override.empty() ? RunPaths{run_dir}.report_dir()
                                               : report_dir_override;
  emit_drift_artifacts(out.report_dir, drift);
  collect_budget_violations(cand.scores.budget, "candidate",
                            out.budget_violations);
  collect_budget_violations(base.scores.budget, "baseline",
                            out.budget_violations);
  return out;
}

}  // namespace capdrift
