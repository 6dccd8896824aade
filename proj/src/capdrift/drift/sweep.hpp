#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace capdrift {

// Precomputed score table driving a stability-plasticity sweep. Each point
// is one merge recipe evaluated on the capability suite plus one in-domain
// metric. "oob" holds the out-of-box model's capability scores (the
// stability baseline); "reference" the unregularized adapted model's
// in-domain score (the plasticity ceiling).
struct SweepTable {
  std::string in_domain_metric;
  std::map<std::string, double> oob;  // capability code -> score
  double reference_in_domain = 0.0;

  struct Point {
    std::string recipe_id;
    double w = 0.0;
    std::map<std::string, double> capabilities;
    double in_domain = 0.0;
  };
  std::vector<Point> points;
};

// Parses the table, throwing std::runtime_error that names the offender on
// any structural problem. A point without the in-domain metric is fatal by
// contract: a sweep whose plasticity column silently vanished is worse than
// no sweep.
SweepTable sweep_table_from_json(const nlohmann::json& j);
nlohmann::json sweep_table_to_json(const SweepTable& t);

struct SweepPoint {
  std::string recipe_id;
  double w = 0.0;
  double stability = 0.0;   // mean relative capability deviation vs OOB (%)
  double plasticity = 0.0;  // relative in-domain deviation vs reference (%)
};

// One stability-plasticity point per table point, sorted by w (recipe_id
// breaks ties). Capabilities with a zero OOB score are skipped inside the
// stability mean; a point with no comparable capability at all throws.
std::vector<SweepPoint> compute_sweep(const SweepTable& table);

}  // namespace capdrift
