#include "capdrift/suite/suite.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "capdrift/metrics/registry.hpp"
#include "capdrift/suite/capability.hpp"
#include "capdrift/util/fs.hpp"
#include "capdrift/util/jsonl.hpp"

namespace capdrift {

nlohmann::json BenchmarkManifest::to_json() const {
  nlohmann::json j;
  nlohmann::json capmap = nlohmann::json::object();
  for (const auto& [cap, ids] : capability_metrics) capmap[cap] = ids;
  j["capabilities"] = capabilities;
  j["capability_metrics"] = std::move(capmap);
  if (max_tokens > 0) j["max_tokens"] = max_tokens;
  j["metrics"] = metrics;
  j["name"] = name;
  j["source_path"] = source_path;
  j["subset_size"] = subset_size;
  j["total_samples"] = total_samples;
  if (transform) j["transform"] = transform->to_json();
  return j;
}

BenchmarkManifest BenchmarkManifest::from_json(const nlohmann::json& j) {
  BenchmarkManifest m;
  m.name = j.at("name").get<std::string>();
  m.source_path = j.at("source_path").get<std::string>();
  m.capabilities = j.at("capabilities").get<std::vector<std::string>>();
  m.metrics = j.at("metrics").get<std::vector<std::string>>();
  if (j.contains("capability_metrics"))
    for (auto it = j["capability_metrics"].begin();
         it != j["capability_metrics"].end(); ++it)
      m.capability_metrics[it.key()] = it.value().get<std::vector<std::string>>();
  m.total_samples = j.at("total_samples").get<long>();
  m.subset_size = j.at("subset_size").get<long>();
  if (j.contains("transform"))
    m.transform = TransformSpec::from_json(j["transform"]);
  m.max_tokens = j.value("max_tokens", 0);
  return m;
}

const BenchmarkManifest* Suite::find_benchmark(const std::string& bname) const {
  for (const auto& b : benchmarks)
    if (b.name == bname) return &b;
  return nullptr;
}

Suite load_suite(const std::filesystem::path& dir, bool manifest_only) {
  nlohmann::json root = nlohmann::json::parse(read_file(dir / "suite.json"));
  Suite s;
  s.name = root.at("suite_name").get<std::string>();
  s.version = root.value("version", "");
  for (const auto& jb : root.at("benchmarks"))
    s.benchmarks.push_back(BenchmarkManifest::from_json(jb));
  std::sort(s.benchmarks.begin(), s.benchmarks.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  if (manifest_only) return s;

  for (const auto& b : s.benchmarks) {
    std::vector<Sample> samples;
    for (const auto& j : read_jsonl(dir / b.source_path))
      samples.push_back(sample_from_json(j));
    s.samples[b.name] = std::move(samples);
    if (b.transform && b.transform->kind == TransformKind::rephrase_attach) {
      nlohmann::json rj =
          nlohmann::json::parse(read_file(dir / b.transform->rephrase_file));
      RephraseMap rm;
      for (auto it = rj.begin(); it != rj.end(); ++it)
        rm[it.key()] = it.value().get<std::string>();
      s.rephrases[b.name] = std::move(rm);
    }
  }
  return s;
}

ValidationReport validate_suite(const Suite& suite, bool samples_loaded) {
  ValidationReport rep;
  auto err = [&](const std::string& m) { rep.errors.push_back(m); };
  auto warn = [&](const std::string& m) { rep.warnings.push_back(m); };

  std::set<std::string> names;
  for (const auto& b : suite.benchmarks) {
    if (!names.insert(b.name).second) err("duplicate benchmark name: " + b.name);
    rep.manifest_total += b.subset_size;

    if (b.subset_size <= 0)
      err(b.name + ": subset_size must be positive");
    if (b.subset_size > b.total_samples)
      err(b.name + ": subset_size " + std::to_string(b.subset_size) +
          " exceeds total_samples " + std::to_string(b.total_samples));

    if (b.capabilities.empty()) err(b.name + ": no capabilities listed");
    for (const auto& cap : b.capabilities) {
      if (!find_capability(cap))
        err(b.name + ": unknown capability code '" + cap + "'");
      else
        rep.capability_benchmarks[cap].push_back(b.name);
    }
    if (b.metrics.empty()) err(b.name + ": no metrics listed");
    for (const auto& id : b.metrics)
      if (!find_metric(id)) err(b.name + ": unregistered metric '" + id + "'");

    // capability_metrics: keys must be listed capabilities, values listed
    // metrics, and every listed capability must be fed by at least one metric.
    for (const auto& [cap, ids] : b.capability_metrics) {
      if (std::find(b.capabilities.begin(), b.capabilities.end(), cap) ==
          b.capabilities.end())
        err(b.name + ": capability_metrics key '" + cap +
            "' not in capabilities");
      if (ids.empty())
        err(b.name + ": capability '" + cap + "' maps to no metrics");
      for (const auto& id : ids)
        if (std::find(b.metrics.begin(), b.metrics.end(), id) == b.metrics.end())
          err(b.name + ": capability '" + cap + "' maps to unlisted metric '" +
              id + "'");
    }
    for (const auto& cap : b.capabilities)
      if (find_capability(cap) && !b.capability_metrics.count(cap))
        err(b.name + ": capability '" + cap + "' has no metric mapping");
    {
      std::set<std::string> mapped;
      for (const auto& [cap, ids] : b.capability_metrics)
        mapped.insert(ids.begin(), ids.end());
      for (const auto& id : b.metrics)
        if (!mapped.count(id))
          warn(b.name + ": metric '" + id + "' feeds no capability (diagnostic)");
    }

    if (b.transform)
      for (const auto& p : b.transform->validate()) err(b.name + ": " + p);

    if (samples_loaded) {
      auto it = suite.samples.find(b.name);
      long n = it == suite.samples.end()
                   ? 0
                   : static_cast<long>(it->second.size());
      if (n != b.subset_size)
        err(b.name + ": manifest says " + std::to_string(b.subset_size) +
            " samples, file has " + std::to_string(n));
      if (it != suite.samples.end()) {
        std::set<std::string> ids;
        for (const auto& smp : it->second) {
          for (const auto& p : validate_sample(smp)) err(b.name + ": " + p);
          if (!ids.insert(smp.id).second)
            err(b.name + ": duplicate sample id '" + smp.id + "'");
          if (smp.has_meta("truncate_exhausted"))
            warn(b.name + ": sample '" + smp.id +
                 "' prompt fully consumed by tail_truncate");
        }
        if (b.transform &&
            b.transform->kind == TransformKind::rephrase_attach) {
          auto rit = suite.rephrases.find(b.name);
          if (rit == suite.rephrases.end()) {
            err(b.name + ": rephrase file missing");
          } else {
            std::vector<std::string> missing;
            for (const auto& smp : it->second)
              if (!rit->second.count(smp.id)) missing.push_back(smp.id);
            if (!missing.empty()) {
              std::string msg = b.name + ": no rephrase for sample ids:";
              for (const auto& id : missing) msg += " " + id;
              err(msg);
            }
          }
        }
      }
    }
  }

  for (const auto& c : kCapabilities)
    if (!rep.capability_benchmarks.count(std::string(c.code)))
      rep.uncovered.push_back(std::string(c.code));
  if (!rep.uncovered.empty()) {
    std::string msg = "uncovered capabilities:";
    for (const auto& c : rep.uncovered) msg += " " + c;
    err(msg);
  }
  return rep;
}

void serialize_suite(const Suite& suite, const std::filesystem::path& dir) {
  nlohmann::json root;
  nlohmann::json benches = nlohmann::json::array();
  for (const auto& b : suite.benchmarks) benches.push_back(b.to_json());
  root["benchmarks"] = std::move(benches);
  root["suite_name"] = suite.name;
  root["version"] = suite.version;
  write_file_atomic(dir / "suite.json", root.dump(2) + "\n");

  for (const auto& b : suite.benchmarks) {
    auto it = suite.samples.find(b.name);
    if (it == suite.samples.end()) continue;
    std::vector<nlohmann::json> lines;
    lines.reserve(it->second.size());
    for (const auto& smp : it->second) lines.push_back(sample_to_json(smp));
    write_jsonl(dir / b.source_path, lines);
    auto rit = suite.rephrases.find(b.name);
    if (rit != suite.rephrases.end() && b.transform) {
      nlohmann::json rj = nlohmann::json::object();
      for (const auto& [id, text] : rit->second) rj[id] = text;
      write_file_atomic(dir / b.transform->rephrase_file, rj.dump(2) + "\n");
    }
  }
}

void apply_suite_transforms(Suite& suite) {
  for (const auto& b : suite.benchmarks) {
    if (!b.transform) continue;
    auto it = suite.samples.find(b.name);
    if (it == suite.samples.end()) continue;
    const RephraseMap* rm = nullptr;
    if (b.transform->kind == TransformKind::rephrase_attach) {
      auto rit = suite.rephrases.find(b.name);
      if (rit == suite.rephrases.end())
        throw std::runtime_error(b.name + ": rephrase map not loaded");
      rm = &rit->second;
    }
    for (auto& smp : it->second) smp = apply_transform(smp, *b.transform, rm);
  }
}

}  // namespace capdrift
