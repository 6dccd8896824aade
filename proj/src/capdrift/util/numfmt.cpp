#include "capdrift/util/numfmt.hpp"

#include <charconv>
#include <cstring>

namespace capdrift {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int precision) {
  char buf[512];
  auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                    precision);
  return std::string(buf, res.ptr);
}

}  // namespace capdrift
