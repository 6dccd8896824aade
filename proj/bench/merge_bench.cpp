// Times the OpenMP merge kernels against the serial reference on synthetic
// checkpoints and cross-checks their outputs. Build target: merge_bench.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "capdrift/merge/kernels.hpp"
#include "merge_ref/reference_merge.hpp"

using namespace capdrift;

namespace {

Checkpoint synthetic_checkpoint(long tensors, long numel, uint32_t seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<float> dist(0.0f, 0.5f);
  Checkpoint ckpt;
  for (long t = 0; t < tensors; ++t) {
    Tensor tensor;
    tensor.name = "layers." + std::to_string(t) + ".weight";
    tensor.shape = {numel};
    tensor.data.resize(numel);
    for (float& v : tensor.data) v = dist(gen);
    ckpt.tensors.push_back(std::move(tensor));
  }
  return ckpt;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

long mismatches(const Checkpoint& a, const Checkpoint& b) {
  long bad = 0;
  for (size_t t = 0; t < a.tensors.size(); ++t) {
    const auto& x = a.tensors[t].data;
    const auto& y = b.tensors[t].data;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i]) ++bad;  // contract is exact f32 equality
    }
  }
  return bad;
}

}  // namespace

int main(int argc, char** argv) {
  long tensors = 24;
  long numel = 1 << 18;
  int reps = 3;
  if (argc > 1) tensors = std::atol(argv[1]);
  if (argc > 2) numel = std::atol(argv[2]);
  if (argc > 3) reps = std::atoi(argv[3]);

  const Checkpoint base = synthetic_checkpoint(tensors, numel, 1);
  const std::vector<Checkpoint> adapted = {
      synthetic_checkpoint(tensors, numel, 2),
      synthetic_checkpoint(tensors, numel, 3),
  };
  std::printf("merge bench: %ld tensors x %ld elements, %zu adapted, %d reps\n",
              tensors, numel, adapted.size(), reps);

  const struct {
    const char* name;
    MergeOptions opts;
  } cases[] = {
      {"linear", {MergeMethod::linear, 0.5, 1.0, 0}},
      {"ties", {MergeMethod::ties, 0.7, 0.3, 0}},
      {"dare_linear", {MergeMethod::dare_linear, 0.5, 0.6, 42}},
      {"dare_ties", {MergeMethod::dare_ties, 0.7, 0.6, 42}},
  };

  bool all_equal = true;
  for (const auto& c : cases) {
    double best_par = 1e100;
    double best_ref = 1e100;
    Checkpoint par, ref;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      par = merge_checkpoints(base, adapted, c.opts);
      best_par = std::min(best_par, seconds_since(t0));

      ref::RefOptions ropts;
      ropts.method = merge_method_name(c.opts.method);
      ropts.weight = c.opts.weight;
      ropts.density = c.opts.density;
      ropts.dare_seed = c.opts.dare_seed;
      t0 = std::chrono::steady_clock::now();
      ref = ref::merge(base, adapted, ropts);
      best_ref = std::min(best_ref, seconds_since(t0));
    }
    const long bad = mismatches(par, ref);
    if (bad != 0) all_equal = false;
    const double melems =
        static_cast<double>(tensors) * static_cast<double>(numel) / 1e6;
    std::printf(
        "%-12s parallel %8.3f ms (%7.1f Melem/s)   reference %8.3f ms "
        "(%7.1f Melem/s)   speedup %5.2fx   mismatches %ld\n",
        c.name, best_par * 1e3, melems / best_par, best_ref * 1e3,
        melems / best_ref, best_ref / best_par, bad);
  }
  if (!all_equal) {
    std::printf("FAIL: parallel and reference outputs differ\n");
    return 1;
  }
  std::printf("outputs identical across all methods\n");
  return 0;
}
