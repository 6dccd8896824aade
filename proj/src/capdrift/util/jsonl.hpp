#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace capdrift {

// Read a JSONL file. A truncated final line (no trailing newline and not
// valid JSON) is dropped when tolerate_partial_tail is set — this is what
// makes killed-and-resumed runs safe to pick up. Any other parse failure
// throws std::runtime_error naming the line.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path,
                                       bool tolerate_partial_tail = false);

// Serialize one record per line (compact dump). Atomic: write temp, rename.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::json>& records);

// Append one record and flush. Used for crash-safe incremental logs.
void append_jsonl(const std::filesystem::path& path, const nlohmann::json& rec);

}  // namespace capdrift
