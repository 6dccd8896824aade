#pragma once

#include <filesystem>
#include <string>

namespace capdrift {

// Whole-file read; throws std::runtime_error if unreadable.
std::string read_file(const std::filesystem::path& path);

// Write to "<path>.tmp" then rename over path, so readers never observe a
// half-written file. Creates parent directories as needed.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes);

}  // namespace capdrift
