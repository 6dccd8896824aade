#include "capdrift/metrics/constraints.hpp"

#include <cctype>

#include "capdrift/util/text.hpp"

namespace capdrift {

namespace {

bool bullet_line(const std::string& line) {
  std::string t = trim(line);
  if (t.size() >= 2 && (t[0] == '-' || t[0] == '*') && t[1] == ' ') return true;
  size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  return i > 0 && i + 1 < t.size() && t[i] == '.' && t[i + 1] == ' ';
}

long count_bullets(const std::string& response) {
  long n = 0;
  for (const auto& line : split_lines(response))
    if (bullet_line(line)) ++n;
  return n;
}

// Script-majority language check: counts letters in the script family the
// code implies. Deliberately shallow — it distinguishes "answered in Chinese"
// from "answered in English", nothing finer.
bool language_matches(const std::string& response, const std::string& code) {
  long latin = 0, cjk = 0, cyrillic = 0, arabic = 0, devanagari = 0,
       hangul = 0, kana = 0, thai = 0, telugu = 0, bengali = 0;
  for (size_t i = 0; i < response.size();) {
    uint32_t cp = utf8_next(response, i);
    if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
        (cp >= 0x00C0 && cp <= 0x024F))
      ++latin;
    else if ((cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF))
      ++cjk;
    else if (cp >= 0x0400 && cp <= 0x04FF) ++cyrillic;
    else if (cp >= 0x0600 && cp <= 0x06FF) ++arabic;
    else if (cp >= 0x0900 && cp <= 0x097F) ++devanagari;
    else if (cp >= 0xAC00 && cp <= 0xD7AF) ++hangul;
    else if (cp >= 0x3040 && cp <= 0x30FF) ++kana;
    else if (cp >= 0x0E00 && cp <= 0x0E7F) ++thai;
    else if (cp >= 0x0C00 && cp <= 0x0C7F) ++telugu;
    else if (cp >= 0x0980 && cp <= 0x09FF) ++bengali;
  }
  long total = latin + cjk + cyrillic + arabic + devanagari + hangul + kana +
               thai + telugu + bengali;
  if (total == 0) return false;
  auto majority = [&](long n) { return 2 * n > total; };
  if (code == "zh") return majority(cjk);
  if (code == "ja") return majority(cjk + kana);
  if (code == "ko") return majority(hangul);
  if (code == "ru") return majority(cyrillic);
  if (code == "ar") return majority(arabic);
  if (code == "hi") return majority(devanagari);
  if (code == "th") return majority(thai);
  if (code == "te") return majority(telugu);
  if (code == "bn") return majority(bengali);
  // every Latin-script language collapses to one bucket
  return majority(latin);
}

}  // namespace

ConstraintsScore score_constraints(const std::string& response,
                                   const nlohmann::json& constraints) {
  ConstraintsScore out;
  if (!constraints.is_array()) {
    out.unknown_kind = true;
    out.error = "constraints must be an array";
    return out;
  }
  bool all = true;
  for (const auto& c : constraints) {
    if (!c.is_object() || !c.contains("kind")) {
      out.unknown_kind = true;
      out.error = "constraint entry without a kind";
      return out;
    }
    const std::string kind = c["kind"].get<std::string>();
    ConstraintResult r;
    r.kind = kind;
    long words = static_cast<long>(tokenize_ws(response).size());
    if (kind == "max_words") {
      long n = c.value("n", 0l);
      r.pass = words <= n;
      r.detail = std::to_string(words) + " words, max " + std::to_string(n);
    } else if (kind == "min_words") {
      long n = c.value("n", 0l);
      r.pass = words >= n;
      r.detail = std::to_string(words) + " words, min " + std::to_string(n);
    } else if (kind == "include_keyword") {
      r.pass = contains_icase(response, c.value("text", ""));
    } else if (kind == "exclude_keyword") {
      r.pass = !contains_icase(response, c.value("text", ""));
    } else if (kind == "case_upper" || kind == "case_lower") {
      bool upper = kind == "case_upper";
      long cased = 0, wrong = 0;
      for (char ch : response) {
        unsigned char u = static_cast<unsigned char>(ch);
        if (u >= 0x80 || !std::isalpha(u)) continue;
        ++cased;
        if (upper ? std::islower(u) : std::isupper(u)) ++wrong;
      }
      r.pass = cased > 0 && wrong == 0;
    } else if (kind == "min_bullets") {
      long n = c.value("n", 0l);
      long got = count_bullets(response);
      r.pass = got >= n;
      r.detail = std::to_string(got) + " bullets, min " + std::to_string(n);
    } else if (kind == "language") {
      r.pass = language_matches(response, c.value("code", "en"));
    } else if (kind == "json_required") {
      nlohmann::json parsed =
          nlohmann::json::parse(trim_view(response), nullptr, false);
      r.pass = !parsed.is_discarded();
    } else {
      out.unknown_kind = true;
      out.error = "unknown constraint kind: " + kind;
      return out;
    }
    all = all && r.pass;
    out.per_constraint.push_back(std::move(r));
  }
  out.value = all ? 1.0 : 0.0;
  return out;
}

}  // namespace capdrift
