#include "support/mock_http.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

#include "httplib.h"

namespace capdrift::testing {

MockServer::MockServer(Handler handler)
    : srv_(std::make_unique<httplib::Server>()), handler_(std::move(handler)) {
  srv_->Post("/v1/chat/completions", [this](const httplib::Request& req,
                                            httplib::Response& res) {
    ++requests_;
    MockReply reply;
    try {
      reply = handler_(nlohmann::json::parse(req.body));
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(std::string("mock handler: ") + e.what(), "text/plain");
      return;
    }
    if (reply.delay_s > 0.0) {
      std::this_thread::sleep_for(
          std::chrono::duration<double>(reply.delay_s));
    }
    if (reply.status != 200) {
      res.status = reply.status;
      res.set_content("injected failure", "text/plain");
      return;
    }
    nlohmann::json body{
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", reply.content}}},
           {"finish_reason", reply.finish_reason}}}}};
    res.set_content(body.dump(), "application/json");
  });
  port_ = srv_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("mock server: bind failed");
  thread_ = std::thread([this] { srv_->listen_after_bind(); });
  srv_->wait_until_ready();
}

MockServer::~MockServer() {
  srv_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

std::string last_user_message(const nlohmann::json& request) {
  const auto& messages = request.at("messages");
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->at("role").get<std::string>() == "user") {
      return it->at("content").get<std::string>();
    }
  }
  return "";
}

MockServer::Handler canned_handler(std::map<std::string, std::string> by_prompt,
                                   double delay_s) {
  auto canned = std::make_shared<std::map<std::string, std::string>>(
      std::move(by_prompt));
  return [canned, delay_s](const nlohmann::json& request) {
    MockReply reply;
    reply.delay_s = delay_s;
    const std::string prompt = last_user_message(request);
    auto it = canned->find(prompt);
    reply.content = it == canned->end() ? "UNKNOWN PROMPT" : it->second;
    return reply;
  };
}

}  // namespace capdrift::testing
