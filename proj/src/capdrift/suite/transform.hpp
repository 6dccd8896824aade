#pragma once

#include <map>
#include <optional>
#include <string>

#include "capdrift/suite/sample.hpp"

namespace capdrift {

// Benchmark-level prompt mutations used to probe specific axes:
//  - schema_wrap: demand strictly structured output (format fidelity)
//  - tail_truncate: cut the final N prompt tokens, removing the explicit
//    question (underspecified compliance)
//  - rephrase_attach: swap in a pre-generated semantically equivalent
//    rewrite of the prompt (prompt-form invariance)
enum class TransformKind { schema_wrap, tail_truncate, rephrase_attach };

std::string transform_kind_name(TransformKind k);
TransformKind parse_transform_kind(const std::string& s);

struct TransformSpec {
  TransformKind kind = TransformKind::schema_wrap;
  std::string schema_id;        // schema_wrap: "A" or "B"
  int truncate_tokens = 0;      // tail_truncate: N final tokens to remove
  std::string rephrase_file;    // rephrase_attach: path relative to suite dir

  nlohmann::json to_json() const;
  static TransformSpec from_json(const nlohmann::json& j);
  // Shape check only (valid schema id, positive token count, file named).
  std::vector<std::string> validate() const;
};

// The two structured-output schemas. The instruction text is part of the
// evaluation contract: tests pin it, so changing it is a scoring change.
struct OutputSchema {
  std::string id;
  std::string instruction;                       // appended to the prompt
  std::vector<std::pair<std::string, std::string>> fields;  // name -> type
};
const OutputSchema& output_schema(const std::string& id);  // throws if unknown

// id -> rewritten prompt text for one benchmark.
using RephraseMap = std::map<std::string, std::string>;

// Apply a transform to one sample, returning the mutated copy. The original
// last user message is preserved under meta.original_prompt and the applied
// transform recorded under meta.transform; a sample that already carries
// meta.transform is rejected (transforms apply exactly once).
// rephrase_attach requires `rephrases` and throws std::runtime_error naming
// the sample when its id is missing from the map.
// tail_truncate that would consume the whole prompt leaves it empty and sets
// meta.truncate_exhausted — validation reports these as warnings.
Sample apply_transform(const Sample& s, const TransformSpec& spec,
                       const RephraseMap* rephrases = nullptr);

}  // namespace capdrift
