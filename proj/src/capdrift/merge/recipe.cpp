#include "capdrift/merge/recipe.hpp"

#include <fstream>
#include <stdexcept>

#include "capdrift/merge/container.hpp"
#include "capdrift/util/fs.hpp"

namespace capdrift {

nlohmann::json recipe_to_json(const MergeRecipe& r) {
  nlohmann::json j{{"method", merge_method_name(r.method)},
                   {"weight", r.weight},
                   {"base", r.base},
                   {"adapted", r.adapted}};
  if (r.density) j["density"] = *r.density;
  if (r.dare_seed) j["dare_seed"] = *r.dare_seed;
  return j;
}

MergeRecipe recipe_from_json(const nlohmann::json& j) {
  MergeRecipe r;
  r.method = parse_merge_method(j.at("method").get<std::string>());
  r.weight = j.at("weight").get<double>();
  if (j.contains("density")) r.density = j.at("density").get<double>();
  if (j.contains("dare_seed")) r.dare_seed = j.at("dare_seed").get<uint64_t>();
  r.base = j.at("base").get<std::string>();
  r.adapted = j.at("adapted").get<std::vector<std::string>>();
  return r;
}

std::vector<std::string> validate_recipe(const MergeRecipe& r) {
  std::vector<std::string> problems;
  if (r.base.empty()) problems.push_back("base checkpoint path is required");
  if (r.adapted.empty())
    problems.push_back("need at least one adapted checkpoint");
  if (!(r.weight >= 0.0 && r.weight <= 1.0))
    problems.push_back("weight must be in [0, 1]");
  bool dare = r.method == MergeMethod::dare_linear ||
              r.method == MergeMethod::dare_ties;
  if (dare || r.method == MergeMethod::ties) {
    if (!r.density)
      problems.push_back("density is required for " +
                         merge_method_name(r.method));
    else if (!(*r.density > 0.0 && *r.density <= 1.0))
      problems.push_back("density must be in (0, 1]");
  }
  if (dare && !r.dare_seed)
    problems.push_back("dare_seed is required for " +
                       merge_method_name(r.method));
  return problems;
}

MergeOptions recipe_options(const MergeRecipe& r) {
  MergeOptions o;
  o.method = r.method;
  o.weight = r.weight;
  o.density = r.density.value_or(1.0);
  o.dare_seed = r.dare_seed.value_or(0);
  return o;
}

namespace {

struct InputFile {
  std::string path;
  std::ifstream stream;
  ContainerIndex index;
};

void open_input(InputFile& f, const std::string& path) {
  f.path = path;
  f.index = read_container_index(path);
  f.stream.open(path, std::ios::binary);
  if (!f.stream) throw std::runtime_error(path + ": cannot open");
}

std::string geometry_complaint(const ContainerIndex& base,
                               const ContainerIndex& other) {
  if (base.entries.size() != other.entries.size())
    return "tensor count differs";
  for (size_t i = 0; i < base.entries.size(); ++i) {
    const auto& a = base.entries[i];
    const auto& b = other.entries[i];
    if (a.name != b.name)
      return "tensor order/name differs at '" + a.name + "'";
    if (a.shape != b.shape) return "'" + a.name + "': shape differs";
    if (a.dtype != b.dtype) return "'" + a.name + "': dtype differs";
  }
  return {};
}

std::vector<float> read_entry(InputFile& f, const ContainerEntry& e) {
  std::string bytes(e.end - e.begin, '\0');
  f.stream.seekg(static_cast<std::streamoff>(f.index.data_start + e.begin));
  f.stream.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f.stream)
    throw std::runtime_error(f.path + ": short read at tensor '" + e.name + "'");
  return decode_values(bytes.data(), e.dtype, e.numel());
}

}  // namespace

void run_merge(const MergeRecipe& r, const std::filesystem::path& out) {
  auto problems = validate_recipe(r);
  if (!problems.empty())
    throw std::runtime_error("merge recipe: " + problems.front());

  InputFile base;
  open_input(base, r.base);
  std::vector<InputFile> models(r.adapted.size());
  for (size_t i = 0; i < r.adapted.size(); ++i) {
    open_input(models[i], r.adapted[i]);
    std::string complaint = geometry_complaint(base.index, models[i].index);
    if (!complaint.empty())
      throw std::runtime_error(r.adapted[i] +
                               ": does not match the base: " + complaint);
  }

  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  uint64_t off = 0;
  for (const auto& e : base.index.entries) {
    uint64_t nbytes = static_cast<uint64_t>(e.numel()) * dtype_size(e.dtype);
    header[e.name] = {{"dtype", dtype_name(e.dtype)},
                      {"shape", e.shape},
                      {"data_offsets", {off, off + nbytes}}};
    off += nbytes;
  }
  std::string hjson = header.dump();

  if (out.has_parent_path())
    std::filesystem::create_directories(out.parent_path());
  std::filesystem::path tmp = out;
  tmp += ".tmp";
  std::ofstream sink(tmp, std::ios::binary | std::ios::trunc);
  if (!sink)
    throw std::runtime_error(tmp.string() + ": cannot open for writing");
  char lenbuf[8];
  uint64_t hlen = hjson.size();
  for (int i = 0; i < 8; ++i)
    lenbuf[i] = static_cast<char>((hlen >> (8 * i)) & 0xFF);
  sink.write(lenbuf, 8);
  sink.write(hjson.data(), static_cast<std::streamsize>(hjson.size()));

  MergeOptions opts = recipe_options(r);
  for (size_t ti = 0; ti < base.index.entries.size(); ++ti) {
    const ContainerEntry& e = base.index.entries[ti];
    std::vector<float> base_vals = read_entry(base, e);
    std::vector<std::vector<float>> adapted_vals;
    adapted_vals.reserve(models.size());
    for (auto& m : models)
      adapted_vals.push_back(read_entry(m, m.index.entries[ti]));
    std::vector<float> merged =
        merge_tensor_values(base_vals, adapted_vals, e.name, opts);
    std::string bytes = encode_values(merged, e.dtype);
    sink.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  sink.flush();
  if (!sink) throw std::runtime_error(tmp.string() + ": write failed");
  sink.close();
  std::filesystem::rename(tmp, out);

  nlohmann::json snapshot = recipe_to_json(r);
  snapshot["out"] = out.string();
  std::filesystem::path side = out;
  side += ".recipe.json";
  write_file_atomic(side, snapshot.dump(2) + "\n");
}

}  // namespace capdrift
