#include "capdrift/metrics/code_exec.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <thread>

#include "capdrift/util/fs.hpp"
#include "capdrift/util/hash.hpp"
#include "capdrift/util/text.hpp"

namespace capdrift {

std::string extract_code_block(const std::string& response) {
  size_t open = response.find("```");
  if (open == std::string::npos) return response;
  size_t body = response.find('\n', open);
  if (body == std::string::npos) return response;
  ++body;  // skip the language-tag line
  size_t close = response.find("```", body);
  if (close == std::string::npos) return response.substr(body);
  return response.substr(body, close - body);
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

}  // namespace

CodeExecResult score_code(const std::string& response, const std::string& tests,
                          const CodeExecConfig& config) {
  CodeExecResult res;
  if (config.command.empty()) {
    res.error = "executor disabled";
    return res;
  }
  std::filesystem::path dir =
      config.work_dir.empty() ? std::filesystem::temp_directory_path()
                              : std::filesystem::path(config.work_dir);
  std::string tag = fnv1a64_hex(response + "\x1f" + tests);
  std::filesystem::path code_path = dir / ("code_" + tag + ".txt");
  std::filesystem::path tests_path = dir / ("tests_" + tag + ".txt");
  write_file_atomic(code_path, extract_code_block(response));
  write_file_atomic(tests_path, tests);

  std::string cmd = config.command + " " + shell_quote(code_path.string()) +
                    " " + shell_quote(tests_path.string());

  struct Cleanup {
    std::filesystem::path a, b;
    ~Cleanup() {
      std::error_code ec;
      std::filesystem::remove(a, ec);
      std::filesystem::remove(b, ec);
    }
  } cleanup{code_path, tests_path};

  pid_t pid = fork();
  if (pid < 0) {
    res.error = std::string("fork: ") + std::strerror(errno);
    return res;
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the timeout can kill helpers too
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  res.ran = true;

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(config.timeout_s);
  int status = 0;
  for (;;) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) {
      res.error = std::string("waitpid: ") + std::strerror(errno);
      return res;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      res.timed_out = true;
      return res;  // value stays 0
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
    res.value = res.exit_code == 0 ? 1.0 : 0.0;
  }
  return res;
}

}  // namespace capdrift
