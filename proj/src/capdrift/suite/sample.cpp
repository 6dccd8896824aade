#include "capdrift/suite/sample.hpp"

#include <stdexcept>

namespace capdrift {

std::string role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "?";
}

Role parse_role(const std::string& s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw std::runtime_error("unknown message role: " + s);
}

std::string gold_kind_name(GoldKind k) {
  switch (k) {
    case GoldKind::none: return "none";
    case GoldKind::option: return "option";
    case GoldKind::number: return "number";
    case GoldKind::text: return "text";
    case GoldKind::structured: return "structured";
  }
  return "?";
}

GoldKind parse_gold_kind(const std::string& s) {
  if (s == "none") return GoldKind::none;
  if (s == "option") return GoldKind::option;
  if (s == "number") return GoldKind::number;
  if (s == "text") return GoldKind::text;
  if (s == "structured") return GoldKind::structured;
  throw std::runtime_error("unknown gold kind: " + s);
}

const nlohmann::json* Sample::find_meta(const std::string& key) const {
  auto it = meta.find(key);
  return it == meta.end() ? nullptr : &it->second;
}

nlohmann::json sample_to_json(const Sample& s) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : s.messages)
    msgs.push_back({{"content", m.content}, {"role", role_name(m.role)}});
  nlohmann::json j;
  j["gold"] = {{"kind", gold_kind_name(s.gold.kind)}, {"payload", s.gold.payload}};
  j["id"] = s.id;
  j["messages"] = std::move(msgs);
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : s.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j;
}

Sample sample_from_json(const nlohmann::json& j) {
  Sample s;
  s.id = j.at("id").get<std::string>();
  for (const auto& m : j.at("messages")) {
    Message msg;
    msg.role = parse_role(m.at("role").get<std::string>());
    msg.content = m.at("content").get<std::string>();
    s.messages.push_back(std::move(msg));
  }
  if (j.contains("gold")) {
    s.gold.kind = parse_gold_kind(j["gold"].at("kind").get<std::string>());
    s.gold.payload = j["gold"].value("payload", nlohmann::json());
  }
  if (j.contains("meta")) {
    for (auto it = j["meta"].begin(); it != j["meta"].end(); ++it)
      s.meta[it.key()] = it.value();
  }
  return s;
}

std::vector<std::string> validate_sample(const Sample& s) {
  std::vector<std::string> problems;
  auto bad = [&](const std::string& what) {
    problems.push_back("sample '" + s.id + "': " + what);
  };
  if (s.id.empty()) problems.push_back("sample with empty id");
  for (char c : s.id)
    if (static_cast<unsigned char>(c) < 0x20) {
      bad("id contains control characters");
      break;
    }
  if (s.messages.empty()) {
    bad("no messages");
  } else {
    if (s.messages.back().role != Role::user)
      bad("last message must be a user turn");
    for (size_t i = 0; i < s.messages.size(); ++i)
      if (s.messages[i].content.empty())
        bad("message " + std::to_string(i) + " is empty");
  }
  switch (s.gold.kind) {
    case GoldKind::option: {
      if (!s.gold.payload.is_string()) {
        bad("option gold payload must be a string");
        break;
      }
      const nlohmann::json* choices = s.find_meta("choices");
      if (!choices || !choices->is_array()) {
        bad("option gold requires meta.choices array");
      } else {
        bool found = false;
        for (const auto& c : *choices)
          if (c.is_string() && c.get<std::string>() == s.gold.payload.get<std::string>())
            found = true;
        if (!found) bad("gold option not present in meta.choices");
      }
      break;
    }
    case GoldKind::number:
      if (!s.gold.payload.is_number() && !s.gold.payload.is_string())
        bad("number gold payload must be numeric or a numeric string");
      break;
    case GoldKind::structured:
      if (!s.gold.payload.is_object())
        bad("structured gold payload must be a JSON object");
      break;
    case GoldKind::text:
      if (!s.gold.payload.is_string()) bad("text gold payload must be a string");
      break;
    case GoldKind::none:
      break;
  }
  return problems;
}

}  // namespace capdrift
