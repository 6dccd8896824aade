#include "capdrift/metrics/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace capdrift {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// One parsed number: [begin, end) in the normalized text plus its value.
struct NumberAt {
  size_t begin = 0, end = 0;
  double value = 0.0;
};

// Parse a number starting at or after `from`; returns the first one found.
// `text` has U+2212 already mapped to '-'.
std::optional<NumberAt> scan_number(const std::string& text, size_t from) {
  const size_t n = text.size();
  for (size_t i = from; i < n; ++i) {
    bool digit_start = is_digit(text[i]);
    bool dot_start = text[i] == '.' && i + 1 < n && is_digit(text[i + 1]);
    if (!digit_start && !dot_start) continue;

    size_t b = i;
    // sign belongs to the number only after a non-word character
    if (b > 0 && (text[b - 1] == '-' || text[b - 1] == '+')) {
      char before = b >= 2 ? text[b - 2] : ' ';
      if (!is_alnum(before) && before != '.') b -= 1;
    }

    std::string digits;  // cleaned copy for strtod
    size_t e = i;
    if (b < i) digits.push_back(text[b]);

    if (digit_start) {
      while (e < n && is_digit(text[e])) ++e;
      digits.append(text, i, e - i);
      // thousands groups: 1,234,567 — well-formed groups of three only, and
      // not when this number sits mid-way through a malformed grouping
      // ("1,23,456" is three separate numbers, not "23,456")
      bool after_group_comma = i >= 2 && text[i - 1] == ',' && is_digit(text[i - 2]);
      if (e - i <= 3 && !after_group_comma) {
        size_t g = e;
        std::string grouped;
        while (g + 3 < n && text[g] == ',' && is_digit(text[g + 1]) &&
               is_digit(text[g + 2]) && is_digit(text[g + 3]) &&
               (g + 4 >= n || !is_digit(text[g + 4]))) {
          grouped.append(text, g + 1, 3);
          g += 4;
        }
        if (!grouped.empty()) {
          digits += grouped;
          e = g;
        }
      }
    }
    // decimal part (also handles numbers that began with '.')
    if (e < n && text[e] == '.' && e + 1 < n && is_digit(text[e + 1])) {
      size_t d = e + 1;
      while (d < n && is_digit(text[d])) ++d;
      digits.append(text, e, d - e);
      e = d;
    }
    // exponent
    if (e < n && (text[e] == 'e' || text[e] == 'E')) {
      size_t x = e + 1;
      if (x < n && (text[x] == '+' || text[x] == '-')) ++x;
      size_t xd = x;
      while (xd < n && is_digit(text[xd])) ++xd;
      if (xd > x) {
        digits.append(text, e, xd - e);
        e = xd;
      }
    }
    // simple integer fraction 3/4 (no spaces, nonzero denominator)
    bool plain_int = digits.find('.') == std::string::npos &&
                     digits.find('e') == std::string::npos &&
                     digits.find('E') == std::string::npos;
    if (plain_int && e < n && text[e] == '/' && e + 1 < n &&
        is_digit(text[e + 1])) {
      size_t d = e + 1;
      while (d < n && is_digit(text[d])) ++d;
      double denom = std::strtod(text.substr(e + 1, d - e - 1).c_str(), nullptr);
      if (denom != 0.0) {
        double numer = std::strtod(digits.c_str(), nullptr);
        return NumberAt{b, d, numer / denom};
      }
      // denominator zero: yield the numerator alone
    }

    return NumberAt{b, e, std::strtod(digits.c_str(), nullptr)};
  }
  return std::nullopt;
}

// "\frac{a}{b}" with integer a, b — used inside \boxed{} content.
std::optional<double> parse_frac(const std::string& text, size_t from) {
  const std::string kFrac = "\\frac{";
  size_t p = text.find(kFrac, from);
  if (p == std::string::npos || p > from + 8) return std::nullopt;
  size_t i = p + kFrac.size();
  auto read_int = [&](size_t& pos) -> std::optional<double> {
    size_t b = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == b || (pos == b + 1 && !is_digit(text[b]))) return std::nullopt;
    return std::strtod(text.substr(b, pos - b).c_str(), nullptr);
  };
  auto a = read_int(i);
  if (!a || i >= text.size() || text[i] != '}') return std::nullopt;
  ++i;
  if (i >= text.size() || text[i] != '{') return std::nullopt;
  ++i;
  auto bv = read_int(i);
  if (!bv || *bv == 0.0 || i >= text.size() || text[i] != '}') return std::nullopt;
  return *a / *bv;
}

std::string normalize_minus(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    // U+2212 MINUS SIGN = E2 88 92
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

constexpr const char* kWordMarkers[] = {"answer", "result", "total", "value",
                                        "ans"};
constexpr size_t kWindow = 40;

}  // namespace

NumericExtraction extract_number(const std::string& response) {
  NumericExtraction out;
  const std::string text = normalize_minus(response);
  const size_t n = text.size();

  // last marker occurrence with a number in its window wins
  std::optional<double> marker_hit;
  auto try_window = [&](size_t start) {
    if (auto f = parse_frac(text, start)) {
      marker_hit = *f;
      return;
    }
    if (auto num = scan_number(text, start))
      if (num->begin <= start + kWindow) marker_hit = num->value;
  };
  for (size_t i = 0; i < n; ++i) {
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    if (text[i] == '#' && text.compare(i, 4, "####") == 0) {
      try_window(i + 4);
      i += 3;
      continue;
    }
    if (text[i] == '\\' && text.compare(i, 7, "\\boxed{") == 0) {
      try_window(i + 7);
      i += 6;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(lc))) continue;
    if (i > 0 && is_alnum(text[i - 1])) continue;
    for (const char* m : kWordMarkers) {
      size_t len = std::char_traits<char>::length(m);
      bool eq = true;
      for (size_t k = 0; k < len && eq; ++k)
        eq = i + k < n &&
             std::tolower(static_cast<unsigned char>(text[i + k])) == m[k];
      if (!eq) continue;
      if (i + len < n && is_alnum(text[i + len])) continue;
      try_window(i + len);
      break;
    }
  }
  if (marker_hit) {
    out.value = marker_hit;
    return out;
  }

  // otherwise: last number anywhere
  std::optional<double> last;
  size_t pos = 0;
  while (auto num = scan_number(text, pos)) {
    last = num->value;
    pos = num->end > pos ? num->end : pos + 1;
  }
  if (last) {
    out.value = last;
    return out;
  }
  out.fallback = true;
  return out;
}

NumericScore score_numeric(const std::string& response, double gold) {
  NumericScore s;
  s.extraction = extract_number(response);
  if (s.extraction.value) {
    double tol = std::max(1e-6, 1e-4 * std::fabs(gold));
    s.value = std::fabs(*s.extraction.value - gold) <= tol ? 1.0 : 0.0;
  }
  return s;
}

std::optional<double> parse_gold_number(const std::string& s) {
  std::string cleaned;
  for (char c : s)
    if (c != ',' && c != ' ') cleaned.push_back(c);
  if (cleaned.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(cleaned.c_str(), &end);
  if (end != cleaned.c_str() + cleaned.size()) return std::nullopt;
  return v;
}

}  // namespace capdrift
