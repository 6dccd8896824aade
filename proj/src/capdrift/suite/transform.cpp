#include "capdrift/suite/transform.hpp"

#include <stdexcept>

#include "capdrift/util/text.hpp"

namespace capdrift {

std::string transform_kind_name(TransformKind k) {
  switch (k) {
    case TransformKind::schema_wrap: return "schema_wrap";
    case TransformKind::tail_truncate: return "tail_truncate";
    case TransformKind::rephrase_attach: return "rephrase_attach";
  }
  return "?";
}

TransformKind parse_transform_kind(const std::string& s) {
  if (s == "schema_wrap") return TransformKind::schema_wrap;
  if (s == "tail_truncate") return TransformKind::tail_truncate;
  if (s == "rephrase_attach") return TransformKind::rephrase_attach;
  throw std::runtime_error("unknown transform kind: " + s);
}

nlohmann::json TransformSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = transform_kind_name(kind);
  switch (kind) {
    case TransformKind::schema_wrap: j["schema_id"] = schema_id; break;
    case TransformKind::tail_truncate: j["truncate_tokens"] = truncate_tokens; break;
    case TransformKind::rephrase_attach: j["rephrase_file"] = rephrase_file; break;
  }
  return j;
}

TransformSpec TransformSpec::from_json(const nlohmann::json& j) {
  TransformSpec t;
  t.kind = parse_transform_kind(j.at("kind").get<std::string>());
  t.schema_id = j.value("schema_id", "");
  t.truncate_tokens = j.value("truncate_tokens", 0);
  t.rephrase_file = j.value("rephrase_file", "");
  return t;
}

std::vector<std::string> TransformSpec::validate() const {
  std::vector<std::string> problems;
  switch (kind) {
    case TransformKind::schema_wrap:
      if (schema_id != "A" && schema_id != "B")
        problems.push_back("schema_wrap: schema_id must be 'A' or 'B', got '" +
                           schema_id + "'");
      break;
    case TransformKind::tail_truncate:
      if (truncate_tokens <= 0)
        problems.push_back("tail_truncate: truncate_tokens must be positive");
      break;
    case TransformKind::rephrase_attach:
      if (rephrase_file.empty())
        problems.push_back("rephrase_attach: rephrase_file is required");
      break;
  }
  return problems;
}

const OutputSchema& output_schema(const std::string& id) {
  static const OutputSchema a{
      "A",
      "Respond with a single JSON object and no other text. The object must "
      "have exactly these fields: \"answer\" (string) with your final answer, "
      "and \"reasoning\" (string) with a brief justification.",
      {{"answer", "string"}, {"reasoning", "string"}}};
  static const OutputSchema b{
      "B",
      "Respond with a single JSON object and no other text. The object must "
      "have exactly these fields: \"final\" (string) with your final answer, "
      "and \"steps\" (array of strings) listing your working steps in order.",
      {{"final", "string"}, {"steps", "array"}}};
  if (id == "A") return a;
  if (id == "B") return b;
  throw std::runtime_error("unknown output schema: " + id);
}

Sample apply_transform(const Sample& s, const TransformSpec& spec,
                       const RephraseMap* rephrases) {
  if (s.has_meta("transform"))
    throw std::runtime_error("sample '" + s.id +
                             "' already transformed; transforms apply exactly once");
  if (s.messages.empty() || s.messages.back().role != Role::user)
    throw std::runtime_error("sample '" + s.id +
                             "' has no final user message to transform");

  Sample out = s;
  std::string& prompt = out.messages.back().content;
  out.meta["original_prompt"] = prompt;

  switch (spec.kind) {
    case TransformKind::schema_wrap: {
      const OutputSchema& schema = output_schema(spec.schema_id);
      prompt += "\n\n";
      prompt += schema.instruction;
      out.meta["schema_id"] = schema.id;
      break;
    }
    case TransformKind::tail_truncate: {
      std::vector<std::string> toks = tokenize_ws(prompt);
      int keep = static_cast<int>(toks.size()) - spec.truncate_tokens;
      if (keep <= 0) {
        prompt.clear();
        out.meta["truncate_exhausted"] = true;
      } else {
        std::string rebuilt;
        for (int i = 0; i < keep; ++i) {
          if (i) rebuilt += ' ';
          rebuilt += toks[static_cast<size_t>(i)];
        }
        prompt = std::move(rebuilt);
      }
      break;
    }
    case TransformKind::rephrase_attach: {
      if (!rephrases)
        throw std::runtime_error("rephrase_attach requires a rephrase map");
      auto it = rephrases->find(s.id);
      if (it == rephrases->end())
        throw std::runtime_error("no rephrase for sample '" + s.id + "'");
      prompt = it->second;
      break;
    }
  }
  out.meta["transform"] = spec.to_json();
  return out;
}

}  // namespace capdrift
