#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capdrift/merge/tensor.hpp"

namespace capdrift::ref {

// Straight-line serial merge, used as the oracle for the parallel kernels and
// as the benchmark baseline. Written independently against the same numeric
// contract: f32 stage materialization, double intra-stage arithmetic summed
// in model order, counter-based DARE draws, trim ties toward the lower flat
// index. Deliberately simple — full sorts, per-coordinate loops, no threads.

struct RefOptions {
  std::string method = "linear";  // linear | ties | dare_linear | dare_ties
  double weight = 1.0;
  double density = 1.0;
  uint64_t dare_seed = 0;
};

Checkpoint merge(const Checkpoint& base,
                 const std::vector<Checkpoint>& adapted,
                 const RefOptions& opts);

}  // namespace capdrift::ref
