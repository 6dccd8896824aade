#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capdrift/suite/sample.hpp"
#include "capdrift/suite/transform.hpp"

namespace capdrift {

struct BenchmarkManifest {
  std::string name;
  std::string source_path;              // sample JSONL, relative to suite dir
  std::vector<std::string> capabilities;  // leaf codes this benchmark feeds
  std::vector<std::string> metrics;       // metric ids computed per sample
  // capability code -> subset of `metrics` that feed that axis. Metrics not
  // mapped anywhere are recorded as diagnostics only.
  std::map<std::string, std::vector<std::string>> capability_metrics;
  long total_samples = 0;  // size of the upstream benchmark
  long subset_size = 0;    // number of samples evaluated here
  std::optional<TransformSpec> transform;
  int max_tokens = 0;      // 0 = use the run-level default

  nlohmann::json to_json() const;
  static BenchmarkManifest from_json(const nlohmann::json& j);
};

struct Suite {
  std::string name;
  std::string version;
  std::vector<BenchmarkManifest> benchmarks;          // sorted by name on load
  std::map<std::string, std::vector<Sample>> samples;  // benchmark -> samples
  std::map<std::string, RephraseMap> rephrases;        // benchmark -> map

  const BenchmarkManifest* find_benchmark(const std::string& name) const;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  long manifest_total = 0;  // sum of subset_size over benchmarks
  std::map<std::string, std::vector<std::string>> capability_benchmarks;
  std::vector<std::string> uncovered;  // capability codes no benchmark feeds

  bool ok() const { return errors.empty(); }
};

// Load suite.json plus every benchmark's sample file and rephrase map from
// `dir`. With manifest_only, sample files are not read (used to sanity-check
// a suite definition before data exists). Throws std::runtime_error on
// unreadable/malformed files; content-level problems are reported by
// validate_suite instead.
Suite load_suite(const std::filesystem::path& dir, bool manifest_only = false);

// Structural validation + capability coverage. Checks: positive sizes with
// subset <= total, sample counts matching subset_size, per-sample structure,
// unique ids, registered metrics, capability_metrics consistency, transform
// shape, rephrase completeness, and that every taxonomy axis is covered.
ValidationReport validate_suite(const Suite& suite,
                                bool samples_loaded = true);

// Write the suite canonically under `dir` (suite.json + benchmarks/*.jsonl +
// rephrases/*.json). load_suite(serialize_suite(s)) == s byte-for-byte.
void serialize_suite(const Suite& suite, const std::filesystem::path& dir);

// Apply each benchmark's transform to its samples in place (skips benchmarks
// without one). Throws on idempotence-guard violations or missing rephrases.
void apply_suite_transforms(Suite& suite);

}  // namespace capdrift
