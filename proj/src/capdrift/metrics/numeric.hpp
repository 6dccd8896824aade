#pragma once

#include <optional>
#include <string>

namespace capdrift {

// Pull a final numeric answer out of free-form text. Rules, in priority:
//   1. markers — the last occurrence of answer/result/total/value/ans,
//      "####", or "\boxed{" that has a number within the next 40 bytes wins;
//      the first number after that marker is taken ("\frac{a}{b}" inside a
//      boxed marker is understood)
//   2. otherwise the last number anywhere in the text
// Number syntax: optional sign (only after a non-word boundary), thousands
// groups (1,234,567), decimals (.5 / 5. styles), e-notation, simple a/b
// integer fractions, U+2212 minus. Percent signs and abutting units (5kg)
// are ignored. No number anywhere => fallback.
struct NumericExtraction {
  std::optional<double> value;
  bool fallback = false;
};

NumericExtraction extract_number(const std::string& response);

struct NumericScore {
  double value = 0.0;  // 1 if within tolerance of gold
  NumericExtraction extraction;
};

// Tolerance: |extracted - gold| <= max(1e-6, 1e-4 * |gold|).
NumericScore score_numeric(const std::string& response, double gold);

// Parse a gold payload string ("42", "1,234.5") to a double.
std::optional<double> parse_gold_number(const std::string& s);

}  // namespace capdrift
