#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capdrift/merge/tensor.hpp"

namespace capdrift {

// Numeric contract, shared with the serial reference implementation: every
// stage materializes f32 (task vectors, sparsified vectors, the combined
// delta) while intra-stage arithmetic runs in double, summing over models in
// list order. Magnitude comparisons for trimming happen on the materialized
// f32 values, so two implementations honoring this contract select the same
// coordinates. Every method is tensor-local — trim, DARE keying, and means
// never cross tensor boundaries — which is what lets the file driver stream
// one tensor at a time.

enum class MergeMethod { linear, ties, dare_linear, dare_ties };

std::string merge_method_name(MergeMethod m);
MergeMethod parse_merge_method(const std::string& s);  // throws on unknown

struct MergeOptions {
  MergeMethod method = MergeMethod::linear;
  double weight = 1.0;     // w: how far to move from the base
  double density = 1.0;    // d: fraction kept by trim / sparsify
  uint64_t dare_seed = 0;  // per-model streams derive from this
};

// --- per-tensor cores ---

// τ = adapted − base, one f32 subtraction per coordinate.
std::vector<float> task_vector_values(const std::vector<float>& adapted,
                                      const std::vector<float>& base);

// Bernoulli(density) keep with 1/density rescale, keyed by (seed, name_hash,
// flat index). Kept values become f32(τ_p / d), dropped become 0; density 1
// keeps everything. In place.
void dare_sparsify_values(std::vector<float>& tau, double density,
                          uint64_t seed, uint64_t name_hash);

// Trim + elect + disjoint mean. Each task vector keeps its ⌈density·n⌉
// largest-|value| coordinates (ties break toward the lower flat index).
// Survivors elect a sign per coordinate by summation; the combined value is
// the mean of the sign-agreeing survivors, or 0 when the electorate cancels.
std::vector<float> ties_combine_values(
    const std::vector<std::vector<float>>& taus, double density);

// One tensor through a whole recipe; `adapted` holds this tensor's values for
// each adapted model, in model order. w = 0 returns the base bit-identically.
//   linear       θ = (1−w)·base + w·mean(adapted)
//   ties         θ = base + w·ties_combine(τ_i, d)
//   dare_linear  θ = base + w·mean(dare(τ_i))
//   dare_ties    θ = base + w·ties_combine(dare(τ_i), d)
std::vector<float> merge_tensor_values(
    const std::vector<float>& base,
    const std::vector<std::vector<float>>& adapted, const std::string& name,
    const MergeOptions& opts);

// --- checkpoint-level wrappers ---

Checkpoint task_vector(const Checkpoint& adapted, const Checkpoint& base);
void dare_sparsify(Checkpoint& tau, double density, uint64_t seed);
Checkpoint ties_combine(const std::vector<Checkpoint>& taus, double density);

// Dispatch on method; all adapted checkpoints must match the base's geometry
// (checked up front). The result carries the base's names, shapes, and
// on-disk dtypes; independent tensors are merged concurrently.
Checkpoint merge_checkpoints(const Checkpoint& base,
                             const std::vector<Checkpoint>& adapted,
                             const MergeOptions& opts);

}  // namespace capdrift
