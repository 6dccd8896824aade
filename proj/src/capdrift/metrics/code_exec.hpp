#pragma once

#include <string>

namespace capdrift {

struct CodeExecConfig {
  // Shell command receiving two arguments: a file with the extracted code
  // and a file with the paired tests. Exit 0 = all tests pass. Empty =
  // executor disabled (the default) — the metric is then excluded, never 0.
  std::string command;
  double timeout_s = 10.0;
  std::string work_dir;  // where code/tests files are materialized
};

struct CodeExecResult {
  double value = 0.0;
  bool ran = false;       // false: executor disabled or spawn failure
  bool timed_out = false;
  int exit_code = -1;
  std::string error;
};

// Pull the program out of the response (first fenced ``` block, language tag
// tolerated; no fence => the whole response) and run it against `tests`.
// The child is killed after timeout_s and scored 0.
CodeExecResult score_code(const std::string& response, const std::string& tests,
                          const CodeExecConfig& config);

std::string extract_code_block(const std::string& response);

}  // namespace capdrift
