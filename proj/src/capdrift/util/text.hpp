#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace capdrift {

// Whitespace trimming (ASCII space/tab/CR/LF/FF/VT).
std::string_view trim_view(std::string_view s);
std::string trim(std::string_view s);

// ASCII-only lowercase; multibyte UTF-8 passes through untouched.
std::string lower_ascii(std::string_view s);

// Split on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> tokenize_ws(std::string_view s);

// Split into lines on '\n' (a trailing '\n' yields no extra empty line);
// '\r' before the break is dropped.
std::vector<std::string> split_lines(std::string_view s);

// Lowercase, map punctuation to spaces, collapse whitespace runs to a
// single space, trim. Used for fuzzy containment checks.
std::string normalize_for_match(std::string_view s);

// Decode one UTF-8 codepoint starting at s[i]; advances i past it.
// Malformed bytes decode as U+FFFD and advance by one.
uint32_t utf8_next(std::string_view s, size_t& i);

// True if `needle` occurs in `haystack` ignoring ASCII case.
bool contains_icase(std::string_view haystack, std::string_view needle);

}  // namespace capdrift
