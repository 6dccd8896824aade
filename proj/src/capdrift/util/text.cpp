#include "capdrift/util/text.hpp"

#include <algorithm>
#include <cctype>

namespace capdrift {

static bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view trim_view(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_ws(s[b])) ++b;
  while (e > b && is_ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string trim(std::string_view s) { return std::string(trim_view(s)); }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::vector<std::string> tokenize_ws(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_ws(s[i])) ++i;
    size_t b = i;
    while (i < s.size() && !is_ws(s[i])) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  size_t b = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '\n') {
      size_t e = i;
      if (e > b && s[e - 1] == '\r') --e;
      if (i == s.size() && b == i) break;  // no empty tail after trailing \n
      out.emplace_back(s.substr(b, e - b));
      b = i + 1;
    }
  }
  return out;
}

std::string normalize_for_match(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      if (std::isalnum(c)) {
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
      } else {
        pending_space = true;  // whitespace and punctuation both separate
      }
    } else {
      // keep multibyte sequences verbatim
      size_t b = i;
      utf8_next(s, i);
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.append(s.substr(b, i - b));
    }
  }
  return out;
}

uint32_t utf8_next(std::string_view s, size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  uint32_t cp = 0xFFFD;
  size_t len = 1;
  if (c < 0x80) {
    cp = c;
  } else if ((c >> 5) == 0x6 && i + 1 < s.size()) {
    cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
    len = 2;
  } else if ((c >> 4) == 0xE && i + 2 < s.size()) {
    cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
    len = 3;
  } else if ((c >> 3) == 0x1E && i + 3 < s.size()) {
    cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
         (s[i + 3] & 0x3F);
    len = 4;
  }
  i += len;
  return cp;
}

bool contains_icase(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  if (needle.size() > haystack.size()) return false;
  auto eq = [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) ==
           std::tolower(static_cast<unsigned char>(b));
  };
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(),
                        needle.end(), eq);
  return it != haystack.end();
}

}  // namespace capdrift
