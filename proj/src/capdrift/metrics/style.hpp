#pragma once

#include <string>
#include <vector>

namespace capdrift {

// Hedging lexicon: case-insensitive substrings; entries flagged
// sentence_start only match at the beginning of a sentence.
struct HedgeEntry {
  std::string phrase;
  bool sentence_start = false;
};

std::vector<HedgeEntry> load_hedging_lexicon(const std::string& path);

struct StyleStats {
  long answer_length_words = 0;
  long num_sentences = 0;
  double mean_sentence_length = 0.0;  // == words / sentences, exactly
  bool has_bullets = false;           // a line starting "- ", "* ", or "N. "
  bool has_table = false;             // a line with two or more '|'
  bool has_emoji = false;             // codepoint in the emoji blocks
  bool hedged = false;                // any lexicon phrase present
  bool direct_first_sentence = false; // first sentence unhedged, not a question
};

// Sentences end at a run of . ! ? followed by whitespace or end-of-text
// (a '.' inside a number does not end a sentence); a trailing fragment
// without terminal punctuation still counts as a sentence.
std::vector<std::string> split_sentences(const std::string& text);

StyleStats score_style(const std::string& response,
                       const std::vector<HedgeEntry>& lexicon);

}  // namespace capdrift
