#include "capdrift/util/jsonl.hpp"

#include <fstream>
#include <stdexcept>

#include "capdrift/util/fs.hpp"
#include "capdrift/util/text.hpp"

namespace capdrift {

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path,
                                       bool tolerate_partial_tail) {
  std::string blob = read_file(path);
  std::vector<nlohmann::json> out;
  size_t line_no = 0;
  size_t b = 0;
  while (b < blob.size()) {
    size_t e = blob.find('\n', b);
    bool had_newline = e != std::string::npos;
    if (!had_newline) e = blob.size();
    std::string_view line = trim_view(std::string_view(blob).substr(b, e - b));
    ++line_no;
    if (!line.empty()) {
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        if (tolerate_partial_tail && !had_newline) break;  // torn tail, drop
        throw std::runtime_error(path.string() + ": bad JSON on line " +
                                 std::to_string(line_no));
      }
      out.push_back(std::move(j));
    }
    b = had_newline ? e + 1 : blob.size();
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::json>& records) {
  std::string blob;
  for (const auto& r : records) {
    blob += r.dump();
    blob += '\n';
  }
  write_file_atomic(path, blob);
}

void append_jsonl(const std::filesystem::path& path, const nlohmann::json& rec) {
  std::ofstream f(path, std::ios::app | std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for append: " + path.string());
  f << rec.dump() << '\n';
  f.flush();
  if (!f) throw std::runtime_error("append failed: " + path.string());
}

}  // namespace capdrift
