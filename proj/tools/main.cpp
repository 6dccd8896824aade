#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "capdrift/drift/sweep.hpp"
#include "capdrift/judge/agreement.hpp"
#include "capdrift/merge/recipe.hpp"
#include "capdrift/report/emit.hpp"
#include "capdrift/run/config.hpp"
#include "capdrift/run/pipeline.hpp"
#include "capdrift/util/fs.hpp"
#include "capdrift/util/hash.hpp"
#include "capdrift/util/jsonl.hpp"
#include "capdrift/util/numfmt.hpp"

namespace {

using namespace capdrift;

nlohmann::json parse_json_file(const std::filesystem::path& path,
                               const char* what) {
  std::string blob;
  try {
    blob = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
  try {
    return nlohmann::json::parse(blob);
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + " " + path.string() +
                      ": " + e.what());
  }
}

std::vector<long> parse_seed_list(const std::string& s) {
  std::vector<long> seeds;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    try {
      seeds.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw ConfigError("--seeds: not an integer: '" + tok + "'");
    }
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return seeds;
}

int finish_with_budget(const std::vector<std::string>& violations) {
  for (const std::string& v : violations) {
    std::cerr << "budget exceeded: " << v << "\n";
  }
  return violations.empty() ? 0 : 3;
}

struct RunArgs {
  std::string config_path;
  std::string run_id;
  bool resume = false;
  std::string suite;
  std::string out;
  std::string seeds;
  std::vector<std::string> benchmarks;
};

int cmd_run(const RunArgs& a) {
  RunConfig cfg = run_config_from_json(
      parse_json_file(a.config_path, "config file"));
  if (!a.suite.empty()) cfg.suite_dir = a.suite;
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (!a.seeds.empty()) cfg.seeds = parse_seed_list(a.seeds);
  if (!a.benchmarks.empty()) cfg.benchmarks = a.benchmarks;
  validate_run_config(cfg);

  const std::string run_id =
      a.run_id.empty() ? fnv1a64_hex(config_snapshot(cfg)) : a.run_id;
  const std::filesystem::path dir = cfg.output_dir / run_id;
  if (!a.resume && std::filesystem::exists(dir / "state.json")) {
    throw ConfigError("run directory " + dir.string() +
                      " already has state; pass --resume to continue it");
  }

  RunResult res = execute_run(cfg, run_id);
  std::cout << "run " << res.run_id << " -> " << res.run_dir.string() << "\n";
  if (res.drift_emitted) {
    std::cout << "report: " << (res.run_dir / "report").string() << "\n";
  }
  if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
  return finish_with_budget(res.budget_violations);
}

struct ScoreArgs {
  std::string run_dir;
  std::string baseline_dir;
  std::string out;
};

int cmd_score(const ScoreArgs& a) {
  ScoreRunOutcome out = score_run(a.run_dir, a.baseline_dir, a.out);
  std::cout << "report: " << out.report_dir.string() << "\n";
  return finish_with_budget(out.budget_violations);
}

struct MergeArgs {
  std::string method = "linear";
  double weight = 1.0;
  double density = 0.0;
  bool density_set = false;
  uint64_t dare_seed = 0;
  bool dare_seed_set = false;
  std::string base;
  std::vector<std::string> adapted;
  std::string out;
};

MergeRecipe recipe_from_args(const MergeArgs& a) {
  MergeRecipe r;
  try {
    r.method = parse_merge_method(a.method);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  r.weight = a.weight;
  if (a.density_set) r.density = a.density;
  if (a.dare_seed_set) r.dare_seed = a.dare_seed;
  r.base = a.base;
  r.adapted = a.adapted;
  const std::vector<std::string> problems = validate_recipe(r);
  if (!problems.empty()) {
    std::string msg = "invalid merge recipe:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  return r;
}

int cmd_merge(const MergeArgs& a) {
  run_merge(recipe_from_args(a), a.out);
  std::cout << "merged " << a.adapted.size() << " model(s) into " << a.base
            << " -> " << a.out << "\n";
  return 0;
}

struct SweepArgs {
  std::string scores;
  std::string out = "sweep_report";
  std::vector<double> weights;
  MergeArgs merge;      // per-cell checkpoint grid parameters
  std::string merge_out;  // grid output directory
};

int cmd_sweep(const SweepArgs& a) {
  const bool want_grid = !a.weights.empty();
  if (a.scores.empty() && !want_grid) {
    throw ConfigError("sweep: pass --scores for a report, --weights with "
                      "--base/--adapted for a checkpoint grid, or both");
  }
  if (want_grid) {
    if (a.merge.base.empty() || a.merge.adapted.empty() ||
        a.merge_out.empty()) {
      throw ConfigError(
          "sweep: a checkpoint grid needs --base, --adapted and --merge-out");
    }
    for (double w : a.weights) {
      MergeArgs cell = a.merge;
      cell.weight = w;
      const std::filesystem::path out =
          std::filesystem::path(a.merge_out) / ("w" + fmt_double(w) + ".ckpt");
      std::filesystem::create_directories(out.parent_path());
      run_merge(recipe_from_args(cell), out);
      std::cout << "w=" << fmt_double(w) << " -> " << out.string() << "\n";
    }
  }
  if (!a.scores.empty()) {
    std::vector<SweepPoint> points;
    try {
      points = compute_sweep(
          sweep_table_from_json(parse_json_file(a.scores, "score table")));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("score table: ") + e.what());
    }
    emit_sweep_artifacts(a.out, points);
    std::cout << "sweep: " << points.size() << " point(s) -> " << a.out
              << "\n";
  }
  return 0;
}

struct ValidateArgs {
  std::string suite;
  bool manifest_only = false;
};

int cmd_validate_suite(const ValidateArgs& a) {
  Suite suite;
  try {
    suite = load_suite(a.suite, a.manifest_only);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("suite: ") + e.what());
  }
  const ValidationReport vr = validate_suite(suite, !a.manifest_only);
  std::cout << "suite: " << suite.name << " v" << suite.version << ", "
            << suite.benchmarks.size() << " benchmark(s), "
            << vr.manifest_total << " samples by manifest\n";
  for (const auto& [cap, benches] : vr.capability_benchmarks) {
    std::cout << "  " << cap << ": " << benches.size() << " benchmark(s)\n";
  }
  for (const std::string& w : vr.warnings) std::cout << "warning: " << w << "\n";
  for (const std::string& e : vr.errors) std::cerr << "error: " << e << "\n";
  for (const std::string& c : vr.uncovered) {
    std::cerr << "error: capability " << c << " has no benchmark\n";
  }
  if (!vr.ok() || !vr.uncovered.empty()) return 1;
  std::cout << "suite is valid\n";
  return 0;
}

struct AgreementArgs {
  std::string rows;
  std::string out;
};

int cmd_judge_agreement(const AgreementArgs& a) {
  std::vector<AgreementRow> rows;
  try {
    for (const nlohmann::json& j : read_jsonl(a.rows)) {
      AgreementRow r;
      r.judge = j.at("judge").get<std::string>();
      r.benchmark = j.at("benchmark").get<std::string>();
      r.sample_id = j.at("sample_id").get<std::string>();
      r.value = j.at("value").get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    throw ConfigError("rows file " + a.rows + ": " + e.what());
  }
  const nlohmann::json out = agreement_to_json(judge_agreement(rows));
  if (a.out.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    write_file_atomic(a.out, out.dump(2) + "\n");
    std::cout << "agreement -> " << a.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capability-drift evaluation harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "evaluate candidate (and baseline) endpoints on the suite");
  run->add_option("--config", run_args.config_path, "run config JSON")
      ->required();
  run->add_option("--run-id", run_args.run_id,
                  "run directory name (default: hash of the config)");
  run->add_flag("--resume", run_args.resume,
                "continue an existing run directory");
  run->add_option("--suite", run_args.suite, "override suite directory");
  run->add_option("--out", run_args.out, "override output directory");
  run->add_option("--seeds", run_args.seeds, "override seeds (comma list)");
  run->add_option("--benchmark", run_args.benchmarks,
                  "restrict to this benchmark (repeatable)");

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand(
      "score", "re-score finished runs offline from their logs");
  score->add_option("--run", score_args.run_dir, "candidate run directory")
      ->required();
  score->add_option("--baseline-run", score_args.baseline_dir,
                    "baseline run directory")
      ->required();
  score->add_option("--out", score_args.out,
                    "report directory (default: <run>/report)");

  MergeArgs merge_args;
  CLI::App* merge = app.add_subcommand("merge", "merge model checkpoints");
  merge->add_option("--method", merge_args.method,
                    "linear | ties | dare_linear | dare_ties");
  merge->add_option("--weight", merge_args.weight, "task-vector weight");
  CLI::Option* density_opt =
      merge->add_option("--density", merge_args.density,
                        "keep fraction for ties/dare methods");
  CLI::Option* seed_opt = merge->add_option("--dare-seed", merge_args.dare_seed,
                                            "RNG seed for dare methods");
  merge->add_option("--base", merge_args.base, "base checkpoint")->required();
  merge->add_option("--adapted", merge_args.adapted,
                    "adapted checkpoint (repeatable)")
      ->required();
  merge->add_option("--out", merge_args.out, "output checkpoint")->required();

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "stability-plasticity sweep report and/or checkpoint grid");
  sweep->add_option("--scores", sweep_args.scores,
                    "precomputed score table JSON");
  sweep->add_option("--out", sweep_args.out, "report directory");
  sweep->add_option("--weights", sweep_args.weights,
                    "merge weights for the checkpoint grid");
  sweep->add_option("--method", sweep_args.merge.method, "merge method");
  CLI::Option* sweep_density =
      sweep->add_option("--density", sweep_args.merge.density, "keep fraction");
  CLI::Option* sweep_seed = sweep->add_option(
      "--dare-seed", sweep_args.merge.dare_seed, "RNG seed for dare methods");
  sweep->add_option("--base", sweep_args.merge.base, "base checkpoint");
  sweep->add_option("--adapted", sweep_args.merge.adapted,
                    "adapted checkpoint (repeatable)");
  sweep->add_option("--merge-out", sweep_args.merge_out,
                    "directory for per-weight merged checkpoints");

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "validate-suite", "structural and coverage checks on a suite");
  validate->add_option("--suite", validate_args.suite, "suite directory")
      ->required();
  validate->add_flag("--manifest-only", validate_args.manifest_only,
                     "check suite.json without reading sample files");

  AgreementArgs agree_args;
  CLI::App* agree = app.add_subcommand(
      "judge-agreement", "pairwise judge correlation from score rows");
  agree->add_option("--rows", agree_args.rows,
                    "JSONL rows {judge, benchmark, sample_id, value}")
      ->required();
  agree->add_option("--out", agree_args.out,
                    "output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  merge_args.density_set = density_opt->count() > 0;
  merge_args.dare_seed_set = seed_opt->count() > 0;
  sweep_args.merge.density_set = sweep_density->count() > 0;
  sweep_args.merge.dare_seed_set = sweep_seed->count() > 0;

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (score->parsed()) return cmd_score(score_args);
    if (merge->parsed()) return cmd_merge(merge_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (validate->parsed()) return cmd_validate_suite(validate_args);
    if (agree->parsed()) return cmd_judge_agreement(agree_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const RunError& e) {
    std::cerr << "run error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
