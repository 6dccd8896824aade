#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace capdrift {

// FNV-1a 64-bit. Stable content hash for judgment payloads and task ids.
inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
  static const char* d = "0123456789abcdef";
  uint64_t h = fnv1a64(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = d[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace capdrift
