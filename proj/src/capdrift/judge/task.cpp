#include "capdrift/judge/task.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "capdrift/util/hash.hpp"

namespace capdrift {

namespace {

// Canonical payload serialization: compact JSON object with sorted keys
// (std::map iteration order). Hashing this string keeps task ids stable
// across runs and across the live/replay boundary.
std::string canonical_payload(const std::map<std::string, std::string>& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j.dump();
}

}  // namespace

JudgeTask make_task(Criterion c, std::map<std::string, std::string> payload) {
  const std::string name = criterion_name(c);
  const std::vector<std::string>& fields = criterion_fields(c);
  // Exact-set check, not subset: extra fields are a blinding leak, missing
  // fields make the prompt unrenderable. Either way the caller is wrong.
  bool mismatch = payload.size() != fields.size();
  if (!mismatch) {
    for (const auto& f : fields) {
      if (payload.find(f) == payload.end()) {
        mismatch = true;
        break;
      }
    }
  }
  if (mismatch) {
    std::string got;
    for (const auto& [k, v] : payload) {
      (void)v;
      if (!got.empty()) got += ",";
      got += k;
    }
    std::string want;
    for (const auto& f : fields) {
      if (!want.empty()) want += ",";
      want += f;
    }
    throw std::invalid_argument("judge payload for " + name +
                                " must carry exactly {" + want + "}, got {" +
                                got + "}");
  }

  JudgeTask t;
  t.criterion = c;
  t.payload = std::move(payload);
  const std::string canon = canonical_payload(t.payload);
  t.payload_hash = fnv1a64_hex(canon);
  t.task_id = fnv1a64_hex(name + "\n" + canon);
  return t;
}

std::string render_prompt(const JudgeTask& task, const std::string& tmpl) {
  std::string out;
  out.reserve(tmpl.size());
  size_t pos = 0;
  while (pos < tmpl.size()) {
    size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    size_t close = tmpl.find("}}", open + 2);
    if (close == std::string::npos) {
      throw std::runtime_error("unterminated {{ in judge prompt template");
    }
    out.append(tmpl, pos, open - pos);
    const std::string key = tmpl.substr(open + 2, close - open - 2);
    auto it = task.payload.find(key);
    if (it == task.payload.end()) {
      throw std::runtime_error("judge prompt template references field '" +
                               key + "' absent from " +
                               criterion_name(task.criterion) + " payload");
    }
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::string load_prompt_template(const std::filesystem::path& prompt_dir,
                                 Criterion c) {
  const std::filesystem::path p = prompt_dir / (criterion_name(c) + ".txt");
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open judge prompt template: " +
                             p.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace capdrift
