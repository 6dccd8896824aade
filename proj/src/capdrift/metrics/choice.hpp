#pragma once

#include <optional>
#include <string>
#include <vector>

namespace capdrift {

struct ChoiceExtraction {
  std::optional<std::string> extracted;  // canonical choice string
  bool fallback = false;                 // nothing extractable
};

// Pull a single option identifier out of a free-form response. Rules, in
// priority order (later rules only run when earlier ones find nothing):
//   1. explicit marker: last occurrence of answer/option/choice/select/ans,
//      optionally followed by "is", then punctuation filler, then a choice
//      token (the first candidate token after a marker must be a choice or
//      that occurrence is ignored)
//   2. parenthesized choice: last "(X)" — or "x)" opening a token — where X
//      is a choice
//   3. final standalone token: the response's last token, punctuation
//      stripped, equals a choice
//   4. leading standalone token: same for the first token ("Yes, because...")
// Matching is ASCII-case-insensitive; the canonical choice spelling is
// returned. No match => fallback.
ChoiceExtraction extract_choice(const std::string& response,
                                const std::vector<std::string>& choices);

struct ChoiceScore {
  double value = 0.0;  // 1 if extracted == gold
  ChoiceExtraction extraction;
};

ChoiceScore score_choice(const std::string& response,
                         const std::vector<std::string>& choices,
                         const std::string& gold);

}  // namespace capdrift
