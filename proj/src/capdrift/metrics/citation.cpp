#include "capdrift/metrics/citation.hpp"

#include <cctype>

namespace capdrift {

CitationScore score_citation(const std::string& response, int num_sources,
                             const std::set<int>& supporting) {
  CitationScore out;
  const size_t n = response.size();
  for (size_t i = 0; i < n; ++i) {
    if (response[i] != '[') continue;
    size_t close = response.find(']', i + 1);
    if (close == std::string::npos) break;
    // accept only digits, commas, and spaces between the brackets
    bool numeric = close > i + 1;
    for (size_t j = i + 1; j < close && numeric; ++j) {
      char c = response[j];
      numeric = std::isdigit(static_cast<unsigned char>(c)) || c == ',' || c == ' ';
    }
    if (!numeric) continue;  // "[sic]" and friends are not citations
    size_t j = i + 1;
    bool any = false;
    while (j < close) {
      while (j < close && !std::isdigit(static_cast<unsigned char>(response[j])))
        ++j;
      size_t b = j;
      while (j < close && std::isdigit(static_cast<unsigned char>(response[j])))
        ++j;
      if (j > b) {
        int k = std::stoi(response.substr(b, j - b));
        out.cited.insert(k);
        if (k < 1 || k > num_sources) out.format_ok = false;
        any = true;
      }
    }
    if (any) {
      out.used_citation = true;
      i = close;
    }
  }
  if (!out.cited.empty()) {
    size_t good = 0;
    for (int k : out.cited)
      if (supporting.count(k)) ++good;
    out.source_acc =
        static_cast<double>(good) / static_cast<double>(out.cited.size());
  }
  return out;
}

}  // namespace capdrift
