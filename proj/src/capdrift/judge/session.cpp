#include "capdrift/judge/session.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "capdrift/util/fs.hpp"
#include "capdrift/util/jsonl.hpp"
#include "capdrift/util/text.hpp"

namespace capdrift {

nlohmann::json judgment_to_json(const Judgment& j) {
  return nlohmann::json{{"task_id", j.task_id},
                        {"criterion", j.criterion},
                        {"payload_hash", j.payload_hash},
                        {"label", j.label},
                        {"raw", j.raw}};
}

Judgment judgment_from_json(const nlohmann::json& j) {
  Judgment out;
  out.task_id = j.at("task_id").get<std::string>();
  out.criterion = j.at("criterion").get<std::string>();
  out.payload_hash = j.at("payload_hash").get<std::string>();
  out.label = j.at("label").get<std::string>();
  out.raw = j.at("raw").get<std::string>();
  return out;
}

namespace {

const char* kEdgePunct = ".,!?:;\"'()[]{}*_`<>|";

std::string strip_edges(std::string s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::strchr(kEdgePunct, s[b])) ++b;
  while (e > b && std::strchr(kEdgePunct, s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string last_nonempty_line(const std::string& raw) {
  std::vector<std::string> lines = split_lines(raw);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    if (!trim_view(*it).empty()) return *it;
  }
  return "";
}

std::filesystem::path default_prompt_root() {
#ifdef CAPDRIFT_DATA_DIR
  return std::filesystem::path(CAPDRIFT_DATA_DIR) / "judge_prompts";
#else
  return std::filesystem::path("data") / "judge_prompts";
#endif
}

}  // namespace

std::string parse_label(const std::string& raw, Criterion c) {
  const std::vector<std::string>& labels = criterion_labels(c);
  const std::string line = last_nonempty_line(raw);
  if (line.empty()) return "";

  // Rebuild the line as space-padded normalized tokens so labels can be
  // matched with hard word boundaries ("invalid" never hits "valid").
  std::string padded = " ";
  for (const std::string& tok : tokenize_ws(line)) {
    std::string t = strip_edges(lower_ascii(tok));
    if (t.empty()) continue;
    padded += t;
    padded += ' ';
  }

  // Longest label first, consuming matches: "no match" must claim its words
  // before the bare "match" label gets a look at them.
  std::vector<std::string> order = labels;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });

  std::string found;
  int distinct = 0;
  for (const std::string& label : order) {
    std::string spaced = label;
    std::replace(spaced.begin(), spaced.end(), '_', ' ');
    bool hit = false;
    for (const std::string& body : {label, spaced}) {
      const std::string pat = " " + body + " ";
      size_t at;
      while ((at = padded.find(pat)) != std::string::npos) {
        hit = true;
        // Blank out the match, keeping the boundary spaces.
        std::fill(padded.begin() + static_cast<long>(at) + 1,
                  padded.begin() + static_cast<long>(at + pat.size()) - 1, ' ');
      }
      if (body == spaced && label == spaced) break;  // no '_' in label
    }
    if (hit) {
      ++distinct;
      found = label;
    }
  }
  return distinct == 1 ? found : "";
}

std::vector<std::string> parse_claims(const std::string& raw) {
  std::vector<std::string> out;
  for (const std::string& line : split_lines(raw)) {
    std::string s = trim(line);
    if (s.empty()) continue;
    // Strip list furniture: "- ", "* ", "3. ", "3) ".
    if (s.size() > 1 && (s[0] == '-' || s[0] == '*') && s[1] == ' ') {
      s = trim(s.substr(2));
    } else {
      size_t d = 0;
      while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d])))
        ++d;
      if (d > 0 && d < s.size() && (s[d] == '.' || s[d] == ')')) {
        s = trim(s.substr(d + 1));
      }
    }
    if (s.empty()) continue;
    if (lower_ascii(s) == "none") continue;
    out.push_back(std::move(s));
  }
  return out;
}

JudgeSession::JudgeSession(JudgeConfig cfg, std::filesystem::path log_path)
    : cfg_(std::move(cfg)), log_path_(std::move(log_path)) {
  load_log(/*allow_rewrite=*/true);
}

JudgeSession JudgeSession::replay(std::filesystem::path log_path) {
  JudgeSession s;
  s.replay_ = true;
  s.log_path_ = std::move(log_path);
  s.load_log(/*allow_rewrite=*/false);
  return s;
}

void JudgeSession::load_log(bool allow_rewrite) {
  if (!std::filesystem::exists(log_path_)) return;
  const std::string blob = read_file(log_path_);
  // A torn tail (no trailing newline) is a record that died mid-append.
  // Live sessions truncate it away before appending so a resumed log stays
  // byte-identical to an uninterrupted one; replay just ignores it.
  const size_t last_nl = blob.rfind('\n');
  const std::string clean =
      last_nl == std::string::npos ? std::string() : blob.substr(0, last_nl + 1);
  if (allow_rewrite && clean.size() != blob.size()) {
    write_file_atomic(log_path_, clean);
  }
  size_t line_no = 0;
  for (const std::string& line : split_lines(clean)) {
    ++line_no;
    if (trim_view(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw std::runtime_error(log_path_.string() +
                               ": corrupt judgment log at line " +
                               std::to_string(line_no));
    }
    Judgment rec = judgment_from_json(j);
    cache_[rec.task_id] = std::move(rec);
  }
}

Judgment JudgeSession::ask(const JudgeTask& task) {
  std::lock_guard<std::mutex> lk(*mu_);
  auto it = cache_.find(task.task_id);
  if (it != cache_.end()) {
    if (it->second.label == kAbstainLabel) ++abstained_;
    return it->second;
  }
  if (replay_) {
    ++replay_misses_;
    ++abstained_;
    Judgment j;
    j.task_id = task.task_id;
    j.criterion = criterion_name(task.criterion);
    j.payload_hash = task.payload_hash;
    j.label = kAbstainLabel;
    j.raw = "";
    return j;
  }
  Judgment j = query_live(task);
  append_jsonl(log_path_, judgment_to_json(j));
  if (j.label == kAbstainLabel) ++abstained_;
  auto& slot = cache_[j.task_id];
  slot = std::move(j);
  return slot;
}

Judgment JudgeSession::query_live(const JudgeTask& task) {
  auto tmpl_it = templates_.find(task.criterion);
  if (tmpl_it == templates_.end()) {
    const std::filesystem::path root =
        cfg_.prompt_root.empty() ? default_prompt_root() : cfg_.prompt_root;
    tmpl_it = templates_
                  .emplace(task.criterion,
                           load_prompt_template(root / cfg_.prompt_version,
                                                task.criterion))
                  .first;
  }
  Sample req;
  req.id = task.task_id;
  Message m;
  m.content = render_prompt(task, tmpl_it->second);
  req.messages.push_back(std::move(m));

  Judgment j;
  j.task_id = task.task_id;
  j.criterion = criterion_name(task.criterion);
  j.payload_hash = task.payload_hash;
  j.label = kAbstainLabel;

  // One retry on a bad verdict, then abstain. The chat client already
  // retries transport-level failures internally.
  for (int attempt = 0; attempt < 2; ++attempt) {
    CompletionRecord rec = complete(req, cfg_.endpoint, cfg_.decoding);
    ++queried_;
    if (rec.finish_reason == FinishReason::error) {
      j.raw = "[error] " + rec.error;
      continue;
    }
    j.raw = rec.response_text;
    if (task.criterion == Criterion::claim_extract) {
      // Extraction has no verdict to validate; any completed response is
      // usable (possibly yielding zero claims).
      j.label = criterion_labels(task.criterion).front();
      break;
    }
    const std::string label = parse_label(rec.response_text, task.criterion);
    if (!label.empty()) {
      j.label = label;
      break;
    }
  }
  return j;
}

size_t JudgeSession::abstained() const {
  std::lock_guard<std::mutex> lk(*mu_);
  return abstained_;
}

size_t JudgeSession::replay_misses() const {
  std::lock_guard<std::mutex> lk(*mu_);
  return replay_misses_;
}

size_t JudgeSession::queried() const {
  std::lock_guard<std::mutex> lk(*mu_);
  return queried_;
}

size_t JudgeSession::cache_size() const {
  std::lock_guard<std::mutex> lk(*mu_);
  return cache_.size();
}

}  // namespace capdrift
