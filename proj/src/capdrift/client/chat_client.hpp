#pragma once

#include <string>

#include "capdrift/suite/sample.hpp"
#include "json.hpp"

namespace capdrift {

struct ModelEndpoint {
  std::string base_url;     // scheme://host:port[/prefix]
  std::string model_id;
  std::string api_key_ref;  // env var NAME holding the key; never the key
  int max_concurrency = 4;
  double timeout_s = 120.0;
  int max_attempts = 3;
  double backoff_base_s = 0.5;  // doubles per retry, capped at 60s
};

struct DecodingParams {
  double temperature = 0.0;
  double top_p = 1.0;
  int max_tokens = 2048;
  long seed = 0;
};

enum class FinishReason { stop, length, error };

std::string finish_reason_name(FinishReason f);
FinishReason parse_finish_reason(const std::string& s);

struct CompletionRecord {
  std::string sample_id;
  std::string model_id;
  long seed = 0;
  std::string response_text;
  FinishReason finish_reason = FinishReason::stop;
  double latency_ms = 0.0;  // excluded from every deterministic comparison
  int attempt_count = 0;
  std::string error;  // detail when finish_reason == error
};

nlohmann::json completion_to_json(const CompletionRecord& r);
CompletionRecord completion_from_json(const nlohmann::json& j);

nlohmann::json endpoint_to_json(const ModelEndpoint& e);
ModelEndpoint endpoint_from_json(const nlohmann::json& j);

// One chat-completion request with retries. Transient failures (connect
// errors, timeouts, 408/429/5xx, malformed response bodies) retry with
// exponential backoff; 401/403 and other client errors stop immediately.
// Never throws: exhausted or non-retryable failures come back as a record
// with finish_reason=error, empty text, and the failure in `error`.
CompletionRecord complete(const Sample& sample, const ModelEndpoint& endpoint,
                          const DecodingParams& params);

}  // namespace capdrift
