#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <thread>

#include "json.hpp"

namespace httplib {
class Server;
}

namespace capdrift::testing {

struct MockReply {
  std::string content;
  std::string finish_reason = "stop";
  int status = 200;
  double delay_s = 0.0;  // simulated latency before answering
};

// Minimal chat-completions endpoint for tests. The handler receives the full
// request body and returns the reply; it runs on server threads, so anything
// it captures must be thread-safe (or read-only).
class MockServer {
 public:
  using Handler = std::function<MockReply(const nlohmann::json& request)>;

  explicit MockServer(Handler handler);
  ~MockServer();

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  std::string base_url() const;  // http://127.0.0.1:<port>
  int port() const { return port_; }
  int requests() const { return requests_.load(); }

 private:
  std::unique_ptr<httplib::Server> srv_;
  std::thread thread_;
  Handler handler_;
  std::atomic<int> requests_{0};
  int port_ = 0;
};

// Last user-role message content of a chat request, or "".
std::string last_user_message(const nlohmann::json& request);

// Handler serving canned responses keyed by the last user message. Unknown
// prompts get "UNKNOWN PROMPT" so mismatches show up in scores, not hangs.
MockServer::Handler canned_handler(
    std::map<std::string, std::string> by_prompt, double delay_s = 0.0);

}  // namespace capdrift::testing
