#include "capdrift/metrics/choice.hpp"

#include <cctype>

#include "capdrift/util/text.hpp"

namespace capdrift {

namespace {

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Strip leading/trailing ASCII punctuation; multibyte bytes stay put, so CJK
// tokens never collapse onto an embedded Latin letter.
std::string_view strip_punct(std::string_view t) {
  size_t b = 0, e = t.size();
  while (b < e) {
    unsigned char c = static_cast<unsigned char>(t[b]);
    if (c < 0x80 && !is_alnum(t[b])) ++b; else break;
  }
  while (e > b) {
    unsigned char c = static_cast<unsigned char>(t[e - 1]);
    if (c < 0x80 && !is_alnum(t[e - 1])) --e; else break;
  }
  return t.substr(b, e - b);
}

// Case-insensitive match against the choice list, returning the canonical
// spelling.
std::optional<std::string> match_choice(std::string_view token,
                                        const std::vector<std::string>& choices) {
  if (token.empty()) return std::nullopt;
  for (const auto& c : choices) {
    if (token.size() != c.size()) continue;
    bool eq = true;
    for (size_t i = 0; i < c.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(token[i])) !=
          std::tolower(static_cast<unsigned char>(c[i]))) {
        eq = false;
        break;
      }
    if (eq) return c;
  }
  return std::nullopt;
}

constexpr const char* kMarkers[] = {"answer",   "option", "choice", "selected",
                                    "selection", "select", "ans"};

// After a marker word, skip an optional "is"/"was" plus punctuation filler,
// then read the next alphanumeric token. The first token after a marker must
// itself be a choice, or the occurrence is discarded.
std::optional<std::string> candidate_after(const std::string& lower, size_t pos,
                                           const std::vector<std::string>& choices) {
  size_t i = pos;
  auto skip_filler = [&](size_t limit) {
    size_t skipped = 0;
    while (i < lower.size() && skipped < limit && !is_alnum(lower[i])) {
      ++i;
      ++skipped;
    }
    return skipped;
  };
  skip_filler(12);
  // optional linking verb
  for (const char* verb : {"is", "was"}) {
    size_t len = std::char_traits<char>::length(verb);
    if (lower.compare(i, len, verb) == 0 &&
        (i + len >= lower.size() || !is_alnum(lower[i + len]))) {
      i += len;
      skip_filler(12);
      break;
    }
  }
  size_t b = i;
  while (i < lower.size() && is_alnum(lower[i])) ++i;
  if (i == b) return std::nullopt;
  return match_choice(std::string_view(lower).substr(b, i - b), choices);
}

}  // namespace

ChoiceExtraction extract_choice(const std::string& response,
                                const std::vector<std::string>& choices) {
  ChoiceExtraction out;
  const std::string lower = lower_ascii(response);

  // 1. explicit markers, last valid occurrence wins
  std::optional<std::string> marker_hit;
  for (size_t i = 0; i < lower.size(); ++i) {
    if (!is_alnum(lower[i]) || (i > 0 && is_alnum(lower[i - 1]))) continue;
    for (const char* m : kMarkers) {
      size_t len = std::char_traits<char>::length(m);
      if (lower.compare(i, len, m) != 0) continue;
      if (i + len < lower.size() && is_alnum(lower[i + len])) continue;
      if (auto c = candidate_after(lower, i + len, choices)) marker_hit = c;
      break;  // longest marker listed first wins at this position
    }
  }
  if (marker_hit) {
    out.extracted = marker_hit;
    return out;
  }

  // 2. parenthesized choice, last one wins: "(B)" or token-initial "b)"
  std::optional<std::string> paren_hit;
  for (size_t i = 0; i < response.size(); ++i) {
    if (response[i] != ')') continue;
    size_t e = i, b = e;
    while (b > 0 && is_alnum(response[b - 1])) --b;
    if (b == e) continue;
    bool opened = b > 0 && response[b - 1] == '(';
    bool token_start = b == 0 || response[b - 1] == ' ' ||
                       response[b - 1] == '\t' || response[b - 1] == '\n';
    if (!opened && !token_start) continue;
    if (auto c = match_choice(std::string_view(response).substr(b, e - b),
                              choices))
      paren_hit = c;
  }
  if (paren_hit) {
    out.extracted = paren_hit;
    return out;
  }

  // 3. final standalone token, then 4. leading standalone token
  std::vector<std::string> toks = tokenize_ws(response);
  if (!toks.empty()) {
    if (auto c = match_choice(strip_punct(toks.back()), choices)) {
      out.extracted = c;
      return out;
    }
    if (auto c = match_choice(strip_punct(toks.front()), choices)) {
      out.extracted = c;
      return out;
    }
  }
  out.fallback = true;
  return out;
}

ChoiceScore score_choice(const std::string& response,
                         const std::vector<std::string>& choices,
                         const std::string& gold) {
  ChoiceScore s;
  s.extraction = extract_choice(response, choices);
  s.value = s.extraction.extracted && *s.extraction.extracted == gold ? 1.0 : 0.0;
  return s;
}

}  // namespace capdrift
