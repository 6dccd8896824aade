#include "capdrift/metrics/style.hpp"

#include <cctype>

#include "capdrift/util/fs.hpp"
#include "capdrift/util/text.hpp"

namespace capdrift {

std::vector<HedgeEntry> load_hedging_lexicon(const std::string& path) {
  std::vector<HedgeEntry> out;
  for (const auto& raw : split_lines(read_file(path))) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    HedgeEntry e;
    if (line[0] == '^') {
      e.sentence_start = true;
      line.erase(0, 1);
    }
    e.phrase = lower_ascii(line);
    if (!e.phrase.empty()) out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  size_t b = 0;
  const size_t n = text.size();
  for (size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // swallow the whole terminal run ("?!", "...")
    size_t j = i;
    while (j + 1 < n &&
           (text[j + 1] == '.' || text[j + 1] == '!' || text[j + 1] == '?'))
      ++j;
    // a '.' inside a number is not a sentence end
    if (c == '.' && j == i && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))
      continue;
    if (j + 1 < n && !std::isspace(static_cast<unsigned char>(text[j + 1]))) {
      i = j;
      continue;
    }
    std::string sent = trim(text.substr(b, j + 1 - b));
    if (!sent.empty()) out.push_back(std::move(sent));
    b = j + 1;
    i = j;
  }
  std::string tail = trim(text.substr(b));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

namespace {

bool is_bullet_line(const std::string& line) {
  std::string t = trim(line);
  if (t.size() >= 2 && (t[0] == '-' || t[0] == '*') && t[1] == ' ') return true;
  size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  return i > 0 && i + 1 < t.size() && t[i] == '.' && t[i + 1] == ' ';
}

bool is_emoji(uint32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) || (cp >= 0x1F600 && cp <= 0x1F64F) ||
         (cp >= 0x1F680 && cp <= 0x1F6FF) || (cp >= 0x1F900 && cp <= 0x1F9FF) ||
         (cp >= 0x2600 && cp <= 0x26FF) || (cp >= 0x2700 && cp <= 0x27BF) ||
         (cp >= 0x1F1E6 && cp <= 0x1F1FF);
}

}  // namespace

StyleStats score_style(const std::string& response,
                       const std::vector<HedgeEntry>& lexicon) {
  StyleStats st;
  st.answer_length_words = static_cast<long>(tokenize_ws(response).size());
  std::vector<std::string> sentences = split_sentences(response);
  st.num_sentences = static_cast<long>(sentences.size());
  st.mean_sentence_length =
      st.num_sentences == 0
          ? 0.0
          : static_cast<double>(st.answer_length_words) /
                static_cast<double>(st.num_sentences);

  for (const auto& line : split_lines(response)) {
    if (is_bullet_line(line)) st.has_bullets = true;
    int pipes = 0;
    for (char c : line)
      if (c == '|') ++pipes;
    if (pipes >= 2) st.has_table = true;
  }
  for (size_t i = 0; i < response.size();)
    if (is_emoji(utf8_next(response, i))) {
      st.has_emoji = true;
      break;
    }

  std::vector<std::string> lower_sentences;
  lower_sentences.reserve(sentences.size());
  for (const auto& s : sentences) lower_sentences.push_back(lower_ascii(s));

  auto sentence_hedged = [&](const std::string& lower_sent) {
    for (const auto& e : lexicon) {
      if (e.sentence_start) {
        // anchored entries only hit at the start of a sentence
        if (lower_sent.rfind(e.phrase, 0) == 0) return true;
      } else if (lower_sent.find(e.phrase) != std::string::npos) {
        return true;
      }
    }
    return false;
  };
  const std::string lower = lower_ascii(response);
  for (const auto& e : lexicon) {
    if (st.hedged) break;
    if (e.sentence_start) {
      for (const auto& ls : lower_sentences)
        if (ls.rfind(e.phrase, 0) == 0) {
          st.hedged = true;
          break;
        }
    } else if (lower.find(e.phrase) != std::string::npos) {
      st.hedged = true;
    }
  }

  if (!sentences.empty()) {
    const std::string& first = sentences.front();
    st.direct_first_sentence =
        !sentence_hedged(lower_sentences.front()) && first.back() != '?';
  }
  return st;
}

}  // namespace capdrift
