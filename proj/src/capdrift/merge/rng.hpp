#pragma once

#include <cstdint>
#include <string>

namespace capdrift {

// Counter-based randomness for drop-and-rescale sparsification. Each draw is
// a pure function of (seed, tensor name, flat index), so any element can be
// generated independently in any order on any thread and the result is still
// byte-stable. This header is the contract both the parallel kernels and the
// serial reference build on.

uint64_t splitmix64(uint64_t x);

uint64_t hash_name(const std::string& name);  // FNV-1a over the bytes

// Uniform in [0, 1): splitmix64(splitmix64(splitmix64(seed) ^ name_hash) ^ index),
// top 53 bits scaled.
double uniform01(uint64_t seed, uint64_t name_hash, uint64_t index);

// Seed for the i-th adapted model (0-based) when sparsifying several task
// vectors under one user-facing seed; keeps the per-model streams decorrelated.
uint64_t model_seed(uint64_t dare_seed, size_t model_index);

}  // namespace capdrift
