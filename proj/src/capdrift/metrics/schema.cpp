#include "capdrift/metrics/schema.hpp"

#include "capdrift/util/text.hpp"

namespace capdrift {

namespace {

std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
      static_cast<unsigned char>(s[1]) == 0xBB &&
      static_cast<unsigned char>(s[2]) == 0xBF)
    return s.substr(3);
  return s;
}

bool field_ok(const nlohmann::json& v, const std::string& type) {
  if (type == "string") return v.is_string();
  if (type == "array") {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (!e.is_string()) return false;
    return true;
  }
  return false;
}

}  // namespace

std::optional<nlohmann::json> extract_json_object(const std::string& text) {
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    int depth = 0;
    bool in_string = false;
    for (size_t j = i; j < text.size(); ++j) {
      char c = text[j];
      if (in_string) {
        if (c == '\\') ++j;           // skip the escaped character
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}') {
        if (--depth == 0) {
          nlohmann::json parsed = nlohmann::json::parse(
              text.substr(i, j - i + 1), nullptr, false);
          if (!parsed.is_discarded() && parsed.is_object()) return parsed;
          break;  // this balanced group is junk; try the next '{'
        }
      }
    }
  }
  return std::nullopt;
}

SchemaReport score_schema(const std::string& response, const OutputSchema& schema) {
  SchemaReport rep;

  std::string_view trimmed = trim_view(strip_bom(response));
  bool strict_object = false;
  if (!trimmed.empty() && trimmed.front() == '{') {
    nlohmann::json parsed = nlohmann::json::parse(trimmed, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) {
      strict_object = true;
      rep.object = std::move(parsed);
    }
  }
  if (!rep.object) rep.object = extract_json_object(response);

  if (rep.object) {
    for (const auto& [name, type] : schema.fields) {
      if (!rep.object->contains(name))
        rep.missing.push_back(name);
      else if (!field_ok((*rep.object)[name], type))
        rep.wrong_type.push_back(name);
    }
    bool fields_ok = rep.missing.empty() && rep.wrong_type.empty();
    rep.strict_pass = strict_object && fields_ok;
    rep.lenient_pass = fields_ok;
  }
  return rep;
}

}  // namespace capdrift
