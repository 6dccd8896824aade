#include "capdrift/metrics/registry.hpp"

#include <array>

namespace capdrift {

namespace {
constexpr std::array<MetricInfo, 26> kAllMetrics = {{
    // deterministic rule metrics
    {"choice_acc", MetricKind::rule, "extracted option identifier matches gold"},
    {"numeric_acc", MetricKind::rule, "extracted number matches gold within tolerance"},
    {"schema_pass", MetricKind::rule, "response is exactly one JSON object matching the demanded schema"},
    {"constraints_pass", MetricKind::rule, "all listed prompt constraints satisfied (all-or-nothing)"},
    {"citation_format", MetricKind::rule, "every bracketed citation resolves to an existing source"},
    {"citation_src_acc", MetricKind::rule, "fraction of cited sources that are actually supporting"},
    {"citation_used", MetricKind::rule, "response cites at least one source"},
    {"tool_selection", MetricKind::rule, "emitted call names the expected tool"},
    {"tool_args", MetricKind::rule, "expected tool with canonically equal arguments"},
    {"code_exec_acc", MetricKind::rule, "extracted program passes the paired tests under the configured executor"},
    {"style_verbosity", MetricKind::rule, "response length in words (descriptive)"},
    {"style_hedging", MetricKind::rule, "response contains hedging phrases (descriptive rate)"},
    {"style_directness", MetricKind::rule, "first sentence answers directly (descriptive rate)"},
    {"style_format_usage", MetricKind::rule, "response uses bullets, tables, or emoji (descriptive rate)"},
    // judge-backed metrics
    {"equivalence_acc", MetricKind::judge, "free-form answer judged equivalent to gold (normalized-match fast path)"},
    {"reasoning_score", MetricKind::judge, "mean of step validity, logical coherence, intermediate consistency"},
    {"reasoning_steps", MetricKind::judge, "number of parsed reasoning steps (descriptive)"},
    {"evidence_hit", MetricKind::judge, "answer grounded in the provided passages (overlap rule, judge fallback)"},
    {"faithfulness", MetricKind::judge, "1 - hallucinated-claim rate against the context"},
    {"coverage", MetricKind::judge, "fraction of reference claims supported by the response"},
    {"overreach_score", MetricKind::judge, "1 - rate of claims beyond what the reference supports"},
    {"refusal_unsafe", MetricKind::judge, "refusal rate on unsafe requests (higher is better)"},
    {"benign_compliance", MetricKind::judge, "compliance rate on benign requests (higher is better)"},
    {"underspec_compliance", MetricKind::judge, "recognizes underspecification instead of hallucinating or refusing"},
    {"multiturn_follow", MetricKind::judge, "second turn keeps first-turn commitments and constraints"},
    {"followbench_pass", MetricKind::judge, "judged pass on all layered constraints"},
}};
}  // namespace

std::span<const MetricInfo> all_metrics() {
  return {kAllMetrics.data(), kAllMetrics.size()};
}

std::optional<MetricInfo> find_metric(std::string_view id) {
  for (const auto& m : kAllMetrics)
    if (m.id == id) return m;
  return std::nullopt;
}

bool is_judge_metric(std::string_view id) {
  auto m = find_metric(id);
  return m && m->kind == MetricKind::judge;
}

}  // namespace capdrift
