#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "capdrift/merge/kernels.hpp"
#include "json.hpp"

namespace capdrift {

struct MergeRecipe {
  MergeMethod method = MergeMethod::linear;
  double weight = 1.0;
  std::optional<double> density;      // required by ties/dare methods
  std::optional<uint64_t> dare_seed;  // required by dare methods
  std::string base;
  std::vector<std::string> adapted;
};

nlohmann::json recipe_to_json(const MergeRecipe& r);
MergeRecipe recipe_from_json(const nlohmann::json& j);

// Empty when the recipe is runnable; otherwise human-readable problems.
// A density given to `linear` is tolerated and ignored (sweep grids pass it).
std::vector<std::string> validate_recipe(const MergeRecipe& r);

MergeOptions recipe_options(const MergeRecipe& r);

// Streams the merge tensor-by-tensor: header-level geometry checks come
// first, so nothing is written on a mismatch; then each tensor flows from
// every input through the merge into the output, which is written beside
// `out` and renamed into place. A snapshot of the recipe (plus the output
// path) lands at "<out>.recipe.json". Peak memory is one tensor per model.
void run_merge(const MergeRecipe& r, const std::filesystem::path& out);

}  // namespace capdrift
