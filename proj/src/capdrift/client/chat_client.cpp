#include "capdrift/client/chat_client.hpp"

#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "httplib.h"

namespace capdrift {

std::string finish_reason_name(FinishReason f) {
  switch (f) {
    case FinishReason::stop: return "stop";
    case FinishReason::length: return "length";
    case FinishReason::error: return "error";
  }
  return "?";
}

FinishReason parse_finish_reason(const std::string& s) {
  if (s == "stop") return FinishReason::stop;
  if (s == "length") return FinishReason::length;
  if (s == "error") return FinishReason::error;
  throw std::runtime_error("unknown finish_reason: " + s);
}

nlohmann::json completion_to_json(const CompletionRecord& r) {
  nlohmann::json j{{"attempt_count", r.attempt_count},
                   {"finish_reason", finish_reason_name(r.finish_reason)},
                   {"latency_ms", r.latency_ms},
                   {"model_id", r.model_id},
                   {"response_text", r.response_text},
                   {"sample_id", r.sample_id},
                   {"seed", r.seed}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

CompletionRecord completion_from_json(const nlohmann::json& j) {
  CompletionRecord r;
  r.attempt_count = j.at("attempt_count").get<int>();
  r.finish_reason = parse_finish_reason(j.at("finish_reason").get<std::string>());
  r.latency_ms = j.at("latency_ms").get<double>();
  r.model_id = j.at("model_id").get<std::string>();
  r.response_text = j.at("response_text").get<std::string>();
  r.sample_id = j.at("sample_id").get<std::string>();
  r.seed = j.at("seed").get<long>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

nlohmann::json endpoint_to_json(const ModelEndpoint& e) {
  return {{"api_key_ref", e.api_key_ref},
          {"backoff_base_s", e.backoff_base_s},
          {"base_url", e.base_url},
          {"max_attempts", e.max_attempts},
          {"max_concurrency", e.max_concurrency},
          {"model_id", e.model_id},
          {"timeout_s", e.timeout_s}};
}

ModelEndpoint endpoint_from_json(const nlohmann::json& j) {
  ModelEndpoint e;
  e.base_url = j.at("base_url").get<std::string>();
  e.model_id = j.at("model_id").get<std::string>();
  if (j.contains("api_key_ref")) e.api_key_ref = j.at("api_key_ref").get<std::string>();
  if (j.contains("max_concurrency")) e.max_concurrency = j.at("max_concurrency").get<int>();
  if (j.contains("timeout_s")) e.timeout_s = j.at("timeout_s").get<double>();
  if (j.contains("max_attempts")) e.max_attempts = j.at("max_attempts").get<int>();
  if (j.contains("backoff_base_s")) e.backoff_base_s = j.at("backoff_base_s").get<double>();
  return e;
}

namespace {

// "http://host:1234/prefix" -> origin "http://host:1234", prefix "/prefix"
void split_base_url(const std::string& base, std::string& origin,
                    std::string& prefix) {
  size_t scheme = base.find("://");
  size_t slash = scheme == std::string::npos ? base.find('/')
                                             : base.find('/', scheme + 3);
  if (slash == std::string::npos) {
    origin = base;
    prefix.clear();
  } else {
    origin = base.substr(0, slash);
    prefix = base.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  }
}

bool retryable_status(int status) {
  return status == 408 || status == 429 || status >= 500;
}

}  // namespace

CompletionRecord complete(const Sample& sample, const ModelEndpoint& endpoint,
                          const DecodingParams& params) {
  CompletionRecord rec;
  rec.sample_id = sample.id;
  rec.model_id = endpoint.model_id;
  rec.seed = params.seed;

  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : sample.messages)
    messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  std::string body = nlohmann::json{{"model", endpoint.model_id},
                                    {"messages", messages},
                                    {"temperature", params.temperature},
                                    {"top_p", params.top_p},
                                    {"max_tokens", params.max_tokens},
                                    {"seed", params.seed}}
                         .dump();

  std::string origin, prefix;
  split_base_url(endpoint.base_url, origin, prefix);
  std::string path = prefix + "/v1/chat/completions";

  httplib::Headers headers;
  if (!endpoint.api_key_ref.empty()) {
    const char* key = std::getenv(endpoint.api_key_ref.c_str());
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto started = std::chrono::steady_clock::now();
  std::string last_error = "no attempt made";
  int attempts = std::max(1, endpoint.max_attempts);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    rec.attempt_count = attempt;
    if (attempt > 1) {
      double delay = endpoint.backoff_base_s;
      for (int i = 2; i < attempt; ++i) delay *= 2.0;
      delay = std::min(delay, 60.0);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }

    bool retryable = true;
    try {
      httplib::Client cli(origin);
      time_t sec = static_cast<time_t>(endpoint.timeout_s);
      time_t usec = static_cast<time_t>((endpoint.timeout_s - static_cast<double>(sec)) * 1e6);
      cli.set_connection_timeout(sec, usec);
      cli.set_read_timeout(sec, usec);
      cli.set_write_timeout(sec, usec);

      auto res = cli.Post(path, headers, body, "application/json");
      if (!res) {
        last_error = "transport: " + httplib::to_string(res.error());
      } else if (res->status != 200) {
        last_error = "http " + std::to_string(res->status);
        if (res->status == 401 || res->status == 403)
          retryable = false;  // bad credentials never fix themselves
        else if (!retryable_status(res->status))
          retryable = false;
      } else {
        nlohmann::json reply = nlohmann::json::parse(res->body);
        const auto& choice = reply.at("choices").at(0);
        rec.response_text = choice.at("message").at("content").get<std::string>();
        std::string finish = choice.value("finish_reason", "stop");
        rec.finish_reason =
            finish == "length" ? FinishReason::length : FinishReason::stop;
        rec.latency_ms =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - started)
                .count();
        return rec;
      }
    } catch (const std::exception& e) {
      last_error = std::string("malformed response: ") + e.what();
    }
    if (!retryable) break;
  }

  rec.response_text.clear();
  rec.finish_reason = FinishReason::error;
  rec.error = last_error;
  rec.latency_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return rec;
}

}  // namespace capdrift
