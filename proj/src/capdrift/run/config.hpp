#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "capdrift/client/chat_client.hpp"
#include "capdrift/metrics/code_exec.hpp"

namespace capdrift {

// Configuration problems (bad fields, missing endpoints, unknown benchmark
// names, invalid merge parameters). The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures during an accepted run (unreadable logs, incomplete transcripts,
// phase violations). Partial state stays on disk; the CLI maps these to
// exit code 2.
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path suite_dir;
  ModelEndpoint candidate;
  std::optional<ModelEndpoint> baseline;
  std::optional<ModelEndpoint> judge;
  std::vector<long> seeds = {0, 1, 2};
  std::vector<std::string> benchmarks;  // empty = every suite benchmark
  std::filesystem::path output_dir = "runs";
  DecodingParams decoding;   // decoding.max_tokens is the run-wide default
  CodeExecConfig code_exec;  // empty command = executor disabled
  std::string judge_prompt_version = "v1";
  std::filesystem::path judge_prompt_root;  // empty = built-in prompts
};

// Strict parse: unknown top-level keys are ConfigErrors (typos in a config
// should never silently change a run). Endpoint API keys travel as
// environment variable *names* (api_key_ref) — the value is read from the
// environment at request time and exists nowhere in config or snapshot.
RunConfig run_config_from_json(const nlohmann::json& j);

// Canonical snapshot form; run_config_from_json round-trips it.
nlohmann::json run_config_to_json(const RunConfig& c);

// Field-level invariants that don't need the suite: candidate endpoint
// present, seeds non-empty and distinct, sane decoding bounds. Throws
// ConfigError naming the field.
void validate_run_config(const RunConfig& c);

// The effective-config snapshot: canonical dump written to the run
// directory before any network traffic.
std::string config_snapshot(const RunConfig& c);

}  // namespace capdrift
