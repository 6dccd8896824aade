#include "capdrift/report/emit.hpp"

#include "capdrift/report/svg.hpp"
#include "capdrift/util/fs.hpp"
#include "capdrift/util/numfmt.hpp"

namespace capdrift {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

nlohmann::json drift_report_to_json(const DriftReport& rep) {
  nlohmann::json j;
  j["baseline"] = rep.baseline_model;
  j["candidate"] = rep.candidate_model;
  nlohmann::json entries = nlohmann::json::array();
  for (const DriftEntry& e : rep.entries) {
    entries.push_back(nlohmann::json{{"capability", e.capability},
                                     {"group", std::string(group_name(e.group))},
                                     {"baseline", e.baseline},
                                     {"candidate", e.candidate},
                                     {"delta_pct", e.delta_pct},
                                     {"regime", regime_name(e.regime)}});
  }
  j["entries"] = std::move(entries);
  nlohmann::json excluded = nlohmann::json::array();
  for (const ExcludedAxis& x : rep.excluded) {
    excluded.push_back(
        nlohmann::json{{"capability", x.capability}, {"reason", x.reason}});
  }
  j["excluded"] = std::move(excluded);
  nlohmann::json groups;
  for (const auto& [name, gm] : rep.group_means) {
    groups[name] = gm.defined ? nlohmann::json(gm.value) : nlohmann::json();
  }
  j["group_means"] = std::move(groups);
  return j;
}

std::string drift_report_to_csv(const DriftReport& rep) {
  std::string out = "capability,group,delta_pct,regime,reason\n";
  // Taxonomy order across both partitions, so the sheet always has 19 rows.
  for (const CapabilityInfo& info : kCapabilities) {
    const std::string cap(info.code);
    const DriftEntry* entry = nullptr;
    for (const DriftEntry& e : rep.entries) {
      if (e.capability == cap) {
        entry = &e;
        break;
      }
    }
    if (entry) {
      out += cap + "," + std::string(group_name(info.group)) + "," +
             fmt_double(entry->delta_pct) + "," + regime_name(entry->regime) +
             ",\n";
      continue;
    }
    for (const ExcludedAxis& x : rep.excluded) {
      if (x.capability == cap) {
        out += cap + "," + std::string(group_name(info.group)) +
               ",,excluded," + csv_field(x.reason) + "\n";
        break;
      }
    }
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::string out = "recipe_id,w,stability,plasticity\n";
  for (const SweepPoint& p : points) {
    out += csv_field(p.recipe_id) + "," + fmt_double(p.w) + "," +
           fmt_double(p.stability) + "," + fmt_double(p.plasticity) + "\n";
  }
  return out;
}

nlohmann::json capability_scores_to_json(const std::string& model,
                                         const AggregateResult& agg) {
  nlohmann::json caps;
  for (const CapabilityInfo& info : kCapabilities) {
    const CapabilityScore& cs = agg.capabilities.at(std::string(info.code));
    nlohmann::json jc;
    if (cs.defined) {
      jc["value"] = cs.value;
      jc["per_benchmark"] = cs.per_benchmark;
      jc["seed_stddev"] = cs.seed_stddev;
    } else {
      jc["value"] = nullptr;
      jc["reason"] = cs.reason;
    }
    jc["samples_used"] = cs.samples_used;
    jc["samples_excluded"] = cs.samples_excluded;
    caps[std::string(info.code)] = std::move(jc);
  }
  return nlohmann::json{{"model", model}, {"capabilities", std::move(caps)}};
}

void emit_drift_artifacts(const std::filesystem::path& report_dir,
                          const DriftReport& rep) {
  std::filesystem::create_directories(report_dir);
  write_file_atomic(report_dir / "drift.json",
                    drift_report_to_json(rep).dump(2) + "\n");
  write_file_atomic(report_dir / "drift.csv", drift_report_to_csv(rep));
  write_file_atomic(report_dir / "spider.svg", spider_svg(rep));
}

void emit_sweep_artifacts(const std::filesystem::path& report_dir,
                          const std::vector<SweepPoint>& points) {
  std::filesystem::create_directories(report_dir);
  write_file_atomic(report_dir / "sweep.csv", sweep_to_csv(points));
  write_file_atomic(report_dir / "sweep.svg", sweep_svg(points));
}

}  // namespace capdrift
