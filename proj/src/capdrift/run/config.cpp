#include "capdrift/run/config.hpp"

#include <set>

namespace capdrift {

namespace {

void require_keys(const nlohmann::json& j,
                  const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.count(k)) {
      throw ConfigError("unknown " + where + " field: " + k);
    }
  }
}

DecodingParams decoding_from_json(const nlohmann::json& j) {
  require_keys(j, {"temperature", "top_p", "max_tokens", "seed"}, "decoding");
  DecodingParams d;
  if (j.contains("temperature")) d.temperature = j.at("temperature").get<double>();
  if (j.contains("top_p")) d.top_p = j.at("top_p").get<double>();
  if (j.contains("max_tokens")) d.max_tokens = j.at("max_tokens").get<int>();
  if (j.contains("seed")) d.seed = j.at("seed").get<long>();
  return d;
}

nlohmann::json decoding_to_json(const DecodingParams& d) {
  return {{"max_tokens", d.max_tokens},
          {"seed", d.seed},
          {"temperature", d.temperature},
          {"top_p", d.top_p}};
}

CodeExecConfig code_exec_from_json(const nlohmann::json& j) {
  require_keys(j, {"command", "timeout_s", "work_dir"}, "code_exec");
  CodeExecConfig c;
  if (j.contains("command")) c.command = j.at("command").get<std::string>();
  if (j.contains("timeout_s")) c.timeout_s = j.at("timeout_s").get<double>();
  if (j.contains("work_dir")) c.work_dir = j.at("work_dir").get<std::string>();
  return c;
}

nlohmann::json code_exec_to_json(const CodeExecConfig& c) {
  return {{"command", c.command},
          {"timeout_s", c.timeout_s},
          {"work_dir", c.work_dir}};
}

ModelEndpoint endpoint_from(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object()) throw ConfigError(name + ": expected an object");
  require_keys(j,
               {"base_url", "model_id", "api_key_ref", "max_concurrency",
                "timeout_s", "max_attempts", "backoff_base_s"},
               name);
  if (!j.contains("base_url")) throw ConfigError(name + ".base_url is required");
  if (!j.contains("model_id")) throw ConfigError(name + ".model_id is required");
  try {
    return endpoint_from_json(j);
  } catch (const std::exception& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  require_keys(j,
               {"suite_dir", "candidate", "baseline", "judge", "seeds",
                "benchmarks", "output_dir", "decoding", "code_exec",
                "judge_prompts"},
               "config");
  RunConfig c;
  if (!j.contains("suite_dir")) throw ConfigError("suite_dir is required");
  c.suite_dir = j.at("suite_dir").get<std::string>();
  if (!j.contains("candidate")) throw ConfigError("candidate endpoint is required");
  c.candidate = endpoint_from(j.at("candidate"), "candidate");
  if (j.contains("baseline")) c.baseline = endpoint_from(j.at("baseline"), "baseline");
  if (j.contains("judge")) c.judge = endpoint_from(j.at("judge"), "judge");
  if (j.contains("seeds")) {
    c.seeds.clear();
    for (const auto& s : j.at("seeds")) c.seeds.push_back(s.get<long>());
  }
  if (j.contains("benchmarks")) {
    for (const auto& b : j.at("benchmarks"))
      c.benchmarks.push_back(b.get<std::string>());
  }
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("decoding")) c.decoding = decoding_from_json(j.at("decoding"));
  if (j.contains("code_exec")) c.code_exec = code_exec_from_json(j.at("code_exec"));
  if (j.contains("judge_prompts")) {
    const auto& jp = j.at("judge_prompts");
    require_keys(jp, {"version", "root"}, "judge_prompts");
    if (jp.contains("version"))
      c.judge_prompt_version = jp.at("version").get<std::string>();
    if (jp.contains("root"))
      c.judge_prompt_root = jp.at("root").get<std::string>();
  }
  return c;
}

nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["suite_dir"] = c.suite_dir.generic_string();
  j["candidate"] = endpoint_to_json(c.candidate);
  if (c.baseline) j["baseline"] = endpoint_to_json(*c.baseline);
  if (c.judge) j["judge"] = endpoint_to_json(*c.judge);
  j["seeds"] = c.seeds;
  if (!c.benchmarks.empty()) j["benchmarks"] = c.benchmarks;
  j["output_dir"] = c.output_dir.generic_string();
  j["decoding"] = decoding_to_json(c.decoding);
  j["code_exec"] = code_exec_to_json(c.code_exec);
  j["judge_prompts"] =
      nlohmann::json{{"version", c.judge_prompt_version},
                     {"root", c.judge_prompt_root.generic_string()}};
  return j;
}

void validate_run_config(const RunConfig& c) {
  if (c.suite_dir.empty()) throw ConfigError("suite_dir is required");
  if (c.candidate.base_url.empty())
    throw ConfigError("candidate.base_url is required");
  if (c.candidate.model_id.empty())
    throw ConfigError("candidate.model_id is required");
  if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
  std::set<long> uniq(c.seeds.begin(), c.seeds.end());
  if (uniq.size() != c.seeds.size())
    throw ConfigError("seeds must be distinct");
  if (c.candidate.max_concurrency < 1)
    throw ConfigError("candidate.max_concurrency must be >= 1");
  if (c.decoding.max_tokens < 1)
    throw ConfigError("decoding.max_tokens must be >= 1");
  if (c.decoding.temperature < 0.0)
    throw ConfigError("decoding.temperature must be >= 0");
  auto check_opt = [](const std::optional<ModelEndpoint>& e,
                      const std::string& name) {
    if (!e) return;
    if (e->base_url.empty()) throw ConfigError(name + ".base_url is required");
    if (e->model_id.empty()) throw ConfigError(name + ".model_id is required");
    if (e->max_concurrency < 1)
      throw ConfigError(name + ".max_concurrency must be >= 1");
  };
  check_opt(c.baseline, "baseline");
  check_opt(c.judge, "judge");
}

std::string config_snapshot(const RunConfig& c) {
  return run_config_to_json(c).dump(2) + "\n";
}

}  // namespace capdrift
