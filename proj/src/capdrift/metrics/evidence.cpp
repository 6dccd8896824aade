#include "capdrift/metrics/evidence.hpp"

#include <set>

#include "capdrift/util/text.hpp"

namespace capdrift {

bool is_stopword(const std::string& token) {
  static const std::set<std::string> kStop = {
      "a",    "an",  "and",  "are",  "as",   "at",   "be",   "but", "by",
      "did",  "do",  "does", "for",  "from", "had",  "has",  "have", "he",
      "her",  "his", "i",    "in",   "is",   "it",   "its",  "not", "of",
      "on",   "or",  "s",    "she",  "that", "the",  "their", "there",
      "they", "this", "to",  "was",  "we",   "were", "will", "with", "you"};
  return kStop.count(token) > 0;
}

EvidenceOverlap evidence_overlap(const std::string& answer,
                                 const std::vector<std::string>& passages) {
  EvidenceOverlap out;
  const std::string norm_answer = normalize_for_match(answer);
  if (norm_answer.empty() || passages.empty()) return out;

  std::set<std::string> content;
  for (const auto& tok : tokenize_ws(norm_answer))
    if (!is_stopword(tok)) content.insert(tok);
  if (content.empty()) return out;  // stopword-only answers never ground

  for (const auto& p : passages) {
    const std::string norm_p = normalize_for_match(p);
    if (norm_p.find(norm_answer) != std::string::npos) {
      out.hit = true;
      out.substring = true;
      out.best_fraction = 1.0;
      return out;
    }
    std::set<std::string> ptoks;
    for (const auto& tok : tokenize_ws(norm_p)) ptoks.insert(tok);
    size_t present = 0;
    for (const auto& w : content)
      if (ptoks.count(w)) ++present;
    double frac = static_cast<double>(present) / static_cast<double>(content.size());
    if (frac > out.best_fraction) out.best_fraction = frac;
  }
  out.hit = out.best_fraction >= 0.8;
  return out;
}

}  // namespace capdrift
