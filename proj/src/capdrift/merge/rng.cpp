#include "capdrift/merge/rng.hpp"

#include "capdrift/util/hash.hpp"

namespace capdrift {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t hash_name(const std::string& name) { return fnv1a64(name); }

double uniform01(uint64_t seed, uint64_t name_hash, uint64_t index) {
  uint64_t u = splitmix64(splitmix64(splitmix64(seed) ^ name_hash) ^ index);
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

uint64_t model_seed(uint64_t dare_seed, size_t model_index) {
  return splitmix64(dare_seed ^
                    (0xD1B54A32D192ED03ULL * (static_cast<uint64_t>(model_index) + 1)));
}

}  // namespace capdrift
