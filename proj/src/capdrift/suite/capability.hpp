#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace capdrift {

// Three capability groups: latent competence (CAN), behavioral preferences
// (WILL), protocol/execution reliability (HOW).
enum class CapabilityGroup { CAN, WILL, HOW };

std::string_view group_name(CapabilityGroup g);

struct CapabilityInfo {
  std::string_view code;   // e.g. "C5a"
  CapabilityGroup group;
  std::string_view label;  // short human-readable axis label
};

// The 19 capability axes, in fixed taxonomy order. This order is the axis
// order of the radar chart and the row order of reports.
inline constexpr std::array<CapabilityInfo, 19> kCapabilities = {{
    {"C1", CapabilityGroup::CAN, "knowledge"},
    {"C2", CapabilityGroup::CAN, "reasoning"},
    {"C3", CapabilityGroup::CAN, "in-context use"},
    {"C4", CapabilityGroup::CAN, "faithfulness"},
    {"C5a", CapabilityGroup::CAN, "prompt robustness"},
    {"C5b", CapabilityGroup::CAN, "domain robustness"},
    {"C5c", CapabilityGroup::CAN, "multilingual"},
    {"W1a", CapabilityGroup::WILL, "unsafe refusal"},
    {"W1b", CapabilityGroup::WILL, "underspecified compliance"},
    {"W2a", CapabilityGroup::WILL, "coverage"},
    {"W2b", CapabilityGroup::WILL, "overreach"},
    {"W3a", CapabilityGroup::WILL, "verbosity"},
    {"W3b", CapabilityGroup::WILL, "formatting"},
    {"H1", CapabilityGroup::HOW, "instruction following"},
    {"H2", CapabilityGroup::HOW, "format fidelity"},
    {"H3", CapabilityGroup::HOW, "tool use"},
    {"H4", CapabilityGroup::HOW, "multi-turn consistency"},
    {"H5", CapabilityGroup::HOW, "long context"},
    {"H6", CapabilityGroup::HOW, "citation"},
}};

// Lookup by code. Unknown codes yield nullopt; the group is implied by the
// leading letter and always matches the table entry.
std::optional<CapabilityInfo> find_capability(std::string_view code);

// Index into kCapabilities (taxonomy order), or -1 if unknown.
int capability_index(std::string_view code);

}  // namespace capdrift
