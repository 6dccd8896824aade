#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace capdrift {

enum class Role { system, user, assistant };

std::string role_name(Role r);
Role parse_role(const std::string& s);  // throws std::runtime_error

struct Message {
  Role role = Role::user;
  std::string content;
};

// What the scorer compares against. `option` carries one of meta.choices;
// `number` a numeric value; `text` a free-form reference; `structured` an
// arbitrary JSON object (tool calls, schema answers); `none` marks
// behavior-only probes that are judged, not matched.
enum class GoldKind { none, option, number, text, structured };

std::string gold_kind_name(GoldKind k);
GoldKind parse_gold_kind(const std::string& s);

struct GoldTarget {
  GoldKind kind = GoldKind::none;
  nlohmann::json payload;  // shape depends on kind
};

struct Sample {
  std::string id;
  std::vector<Message> messages;  // last entry must be the user turn to answer
  GoldTarget gold;
  // Free-form per-sample fields (choices, passages, constraints, behavior,
  // supporting_sources, applied transform provenance...). std::map keeps keys
  // sorted so canonical serialization is stable.
  std::map<std::string, nlohmann::json> meta;

  bool has_meta(const std::string& key) const { return meta.count(key) > 0; }
  const nlohmann::json* find_meta(const std::string& key) const;
};

// Canonical JSON round-trip. to_json emits sorted keys / fixed field order so
// serializing the same sample twice is byte-identical.
nlohmann::json sample_to_json(const Sample& s);
Sample sample_from_json(const nlohmann::json& j);  // throws on malformed input

// Structural checks for one sample; returns human-readable problems, empty
// when valid. Metric-specific requirements live with suite validation, which
// knows which metrics will run.
std::vector<std::string> validate_sample(const Sample& s);

}  // namespace capdrift
