#pragma once

#include <string>

namespace capdrift {

// Shortest round-trip decimal representation (std::to_chars). Deterministic
// across runs and platforms with the same libstdc++; the reason every float
// that lands in a report goes through here instead of ostream.
std::string fmt_double(double v);

// Fixed-precision decimal (std::to_chars, chars_format::fixed).
std::string fmt_fixed(double v, int precision);

}  // namespace capdrift
