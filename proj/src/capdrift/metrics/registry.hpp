#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace capdrift {

// Rule metrics are computed deterministically from the response text alone;
// judge metrics require LLM judgments (resolved live or replayed from logs).
enum class MetricKind { rule, judge };

struct MetricInfo {
  std::string_view id;
  MetricKind kind;
  std::string_view summary;
};

// Every metric id a benchmark manifest may reference.
std::span<const MetricInfo> all_metrics();

std::optional<MetricInfo> find_metric(std::string_view id);
bool is_judge_metric(std::string_view id);

}  // namespace capdrift
