#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "capdrift/judge/criteria.hpp"

namespace capdrift {

struct JudgeTask {
  Criterion criterion = Criterion::equivalence;
  // Sorted keys make the rendered payload canonical for hashing.
  std::map<std::string, std::string> payload;
  std::string task_id;       // content hash of criterion + payload
  std::string payload_hash;  // content hash of payload alone
};

// Builds a task, enforcing that the payload carries exactly the fields the
// criterion declares — no model ids, run ids, or stray context can ride
// along, which keeps judges blind by construction. Throws
// std::invalid_argument on a field mismatch: that is a caller bug.
JudgeTask make_task(Criterion c, std::map<std::string, std::string> payload);

// Replaces each {{field}} with the payload value; throws std::runtime_error
// if the template references a field the payload lacks or a placeholder
// survives substitution.
std::string render_prompt(const JudgeTask& task, const std::string& tmpl);

// Reads "<prompt_dir>/<criterion name>.txt".
std::string load_prompt_template(const std::filesystem::path& prompt_dir,
                                 Criterion c);

}  // namespace capdrift
