#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "capdrift/client/chat_client.hpp"
#include "capdrift/judge/criteria.hpp"
#include "capdrift/judge/task.hpp"

namespace capdrift {

// One judged atom. label is always from the criterion's closed set, or
// "abstain" when the judge could not produce a usable verdict. raw keeps the
// verbatim model text so logs can be audited and replayed.
struct Judgment {
  std::string task_id;
  std::string criterion;
  std::string payload_hash;
  std::string label;
  std::string raw;
};

nlohmann::json judgment_to_json(const Judgment& j);
Judgment judgment_from_json(const nlohmann::json& j);

inline constexpr const char* kAbstainLabel = "abstain";

struct JudgeConfig {
  ModelEndpoint endpoint;
  // Prompt templates live under prompt_root/<prompt_version>/<criterion>.txt.
  std::filesystem::path prompt_root;  // empty -> built-in data directory
  std::string prompt_version = "v1";
  DecodingParams decoding;  // temperature 0 by default; max_tokens trimmed
  JudgeConfig() { decoding.max_tokens = 512; }
};

// Parse a verdict label out of free-form judge text. Tries, in order: the
// last non-empty line normalized (trimmed, lowercased, edge punctuation
// stripped, inner spaces collapsed to '_'), then a token scan of that line
// accepting iff exactly one distinct label occurs. Returns empty string on
// failure.
std::string parse_label(const std::string& raw, Criterion c);

// Split claim-extraction output into individual claims: one per line,
// bullets and list numbering stripped, blank lines and a lone "NONE"
// dropped.
std::vector<std::string> parse_claims(const std::string& raw);

// A judging session bound to one append-only judgment log. The log doubles
// as the cache: every ask() first consults it, so a resumed run replays
// prior verdicts instead of re-querying, and an offline replay session can
// score without any network at all.
class JudgeSession {
 public:
  // Live session: loads log_path if present (truncating a torn tail so
  // appends keep the file byte-identical to an uninterrupted run), then
  // answers cache misses through cfg.endpoint.
  JudgeSession(JudgeConfig cfg, std::filesystem::path log_path);

  // Replay session: log-only. Cache misses abstain and are counted in
  // replay_misses(); the log file is never modified.
  static JudgeSession replay(std::filesystem::path log_path);

  Judgment ask(const JudgeTask& task);

  // Number of ask() calls answered with "abstain" (cached or fresh).
  size_t abstained() const;
  // Cache misses in replay mode.
  size_t replay_misses() const;
  // Fresh judge calls made by this session (live mode only).
  size_t queried() const;
  size_t cache_size() const;
  bool is_replay() const { return replay_; }
  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  JudgeSession() = default;
  void load_log(bool allow_rewrite);
  Judgment query_live(const JudgeTask& task);

  JudgeConfig cfg_;
  std::filesystem::path log_path_;
  bool replay_ = false;
  // unique_ptr keeps the session movable (the replay factory returns one).
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::map<std::string, Judgment> cache_;  // task_id -> judgment
  std::map<Criterion, std::string> templates_;
  size_t abstained_ = 0;
  size_t replay_misses_ = 0;
  size_t queried_ = 0;
};

}  // namespace capdrift
