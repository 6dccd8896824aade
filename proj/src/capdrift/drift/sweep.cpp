#include "capdrift/drift/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "capdrift/drift/drift.hpp"

namespace capdrift {

SweepTable sweep_table_from_json(const nlohmann::json& j) {
  SweepTable t;
  if (!j.is_object()) throw std::runtime_error("sweep table: not an object");
  t.in_domain_metric = j.at("in_domain_metric").get<std::string>();
  if (!j.contains("oob") || !j.at("oob").is_object()) {
    throw std::runtime_error("sweep table: missing oob capability scores");
  }
  for (const auto& [cap, v] : j.at("oob").items()) {
    t.oob[cap] = v.get<double>();
  }
  if (!j.contains("reference") || !j.at("reference").contains("in_domain")) {
    throw std::runtime_error(
        "sweep table: missing reference in-domain score (metric " +
        t.in_domain_metric + ")");
  }
  t.reference_in_domain = j.at("reference").at("in_domain").get<double>();
  for (const auto& jp : j.at("points")) {
    SweepTable::Point p;
    p.w = jp.at("w").get<double>();
    p.recipe_id = jp.value("recipe_id", "w=" + std::to_string(p.w));
    if (!jp.contains("in_domain")) {
      // A sweep point without its plasticity measurement is unusable, and
      // pretending otherwise would hide the gap — fail loudly.
      throw std::runtime_error("sweep table: point " + p.recipe_id +
                               " lacks in-domain metric " + t.in_domain_metric);
    }
    p.in_domain = jp.at("in_domain").get<double>();
    if (jp.contains("capabilities")) {
      for (const auto& [cap, v] : jp.at("capabilities").items()) {
        p.capabilities[cap] = v.get<double>();
      }
    }
    t.points.push_back(std::move(p));
  }
  return t;
}

nlohmann::json sweep_table_to_json(const SweepTable& t) {
  nlohmann::json j;
  j["in_domain_metric"] = t.in_domain_metric;
  j["oob"] = t.oob;
  j["reference"] = nlohmann::json{{"in_domain", t.reference_in_domain}};
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : t.points) {
    pts.push_back(nlohmann::json{{"recipe_id", p.recipe_id},
                                 {"w", p.w},
                                 {"capabilities", p.capabilities},
                                 {"in_domain", p.in_domain}});
  }
  j["points"] = std::move(pts);
  return j;
}

std::vector<SweepPoint> compute_sweep(const SweepTable& table) {
  if (table.reference_in_domain == 0.0) {
    throw std::runtime_error(
        "sweep table: reference in-domain score is zero; plasticity is "
        "undefined");
  }
  std::vector<SweepPoint> out;
  for (const SweepTable::Point& p : table.points) {
    SweepPoint sp;
    sp.recipe_id = p.recipe_id;
    sp.w = p.w;
    double sum = 0.0;
    int n = 0;
    for (const auto& [cap, oob_value] : table.oob) {
      auto it = p.capabilities.find(cap);
      if (it == p.capabilities.end()) continue;
      if (oob_value == 0.0) continue;  // zero baseline: axis not comparable
      sum += relative_deviation(it->second, oob_value);
      ++n;
    }
    if (n == 0) {
      throw std::runtime_error("sweep table: point " + p.recipe_id +
                               " shares no nonzero capability with oob");
    }
    sp.stability = sum / n;
    sp.plasticity =
        relative_deviation(p.in_domain, table.reference_in_domain);
    out.push_back(std::move(sp));
  }
  std::sort(out.begin(), out.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return a.w != b.w ? a.w < b.w : a.recipe_id < b.recipe_id;
  });
  return out;
}

}  // namespace capdrift
