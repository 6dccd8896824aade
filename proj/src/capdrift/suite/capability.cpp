#include "capdrift/suite/capability.hpp"

namespace capdrift {

std::string_view group_name(CapabilityGroup g) {
  switch (g) {
    case CapabilityGroup::CAN: return "CAN";
    case CapabilityGroup::WILL: return "WILL";
    case CapabilityGroup::HOW: return "HOW";
  }
  return "?";
}

std::optional<CapabilityInfo> find_capability(std::string_view code) {
  for (const auto& c : kCapabilities)
    if (c.code == code) return c;
  return std::nullopt;
}

int capability_index(std::string_view code) {
  for (size_t i = 0; i < kCapabilities.size(); ++i)
    if (kCapabilities[i].code == code) return static_cast<int>(i);
  return -1;
}

}  // namespace capdrift
