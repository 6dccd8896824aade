#include "capdrift/metrics/tool_call.hpp"

#include <cmath>

#include "capdrift/metrics/schema.hpp"

namespace capdrift {

nlohmann::json canonicalize_args(const nlohmann::json& j) {
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      out[it.key()] = canonicalize_args(it.value());
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) out.push_back(canonicalize_args(e));
    return out;
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::floor(v) == v && std::fabs(v) < 9.0e15)
      return nlohmann::json(static_cast<long long>(v));
  }
  return j;
}

ToolCallScore score_tool_call(const std::string& response,
                              const nlohmann::json& expected_call) {
  ToolCallScore out;
  auto obj = extract_json_object(response);
  if (!obj || !obj->contains("name") || !(*obj)["name"].is_string()) return out;
  out.parsed = true;
  out.call = *obj;

  const std::string expected_name = expected_call.value("name", "");
  const std::string got_name = (*obj)["name"].get<std::string>();
  if (got_name != expected_name) return out;
  out.selection = 1.0;

  nlohmann::json expected_args =
      canonicalize_args(expected_call.value("arguments", nlohmann::json::object()));
  nlohmann::json got_args =
      canonicalize_args(obj->value("arguments", nlohmann::json::object()));
  out.args = expected_args == got_args ? 1.0 : 0.0;
  return out;
}

}  // namespace capdrift
