#include "merge_ref/reference_merge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "capdrift/merge/rng.hpp"

namespace capdrift::ref {

namespace {

// keep mask: true for the ⌈density·n⌉ largest magnitudes; stable sort keeps
// equal magnitudes in index order, so lower indices win ties
std::vector<char> trim_mask(const std::vector<float>& tau, double density) {
  size_t n = tau.size();
  size_t keep = static_cast<size_t>(std::ceil(density * static_cast<double>(n)));
  if (keep > n) keep = n;
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&tau](size_t a, size_t b) {
    return std::fabs(tau[a]) > std::fabs(tau[b]);
  });
  std::vector<char> mask(n, 0);
  for (size_t i = 0; i < keep; ++i) mask[order[i]] = 1;
  return mask;
}

}  // namespace

Checkpoint merge(const Checkpoint& base,
                 const std::vector<Checkpoint>& adapted,
                 const RefOptions& opts) {
  if (adapted.empty())
    throw std::runtime_error("reference merge: no adapted checkpoints");
  size_t k = adapted.size();

  Checkpoint out;
  out.tensors.reserve(base.tensors.size());
  for (size_t ti = 0; ti < base.tensors.size(); ++ti) {
    const Tensor& bt = base.tensors[ti];
    size_t n = bt.data.size();
    Tensor ot;
    ot.name = bt.name;
    ot.dtype = bt.dtype;
    ot.shape = bt.shape;
    ot.data.resize(n);

    if (opts.method == "linear") {
      for (size_t p = 0; p < n; ++p) {
        double s = 0.0;
        for (size_t m = 0; m < k; ++m) s += adapted[m].tensors[ti].data[p];
        ot.data[p] = static_cast<float>((1.0 - opts.weight) * bt.data[p] +
                                        opts.weight * (s / static_cast<double>(k)));
      }
      out.tensors.push_back(std::move(ot));
      continue;
    }

    std::vector<std::vector<float>> taus(k, std::vector<float>(n));
    for (size_t m = 0; m < k; ++m)
      for (size_t p = 0; p < n; ++p)
        taus[m][p] = adapted[m].tensors[ti].data[p] - bt.data[p];

    if (opts.method == "dare_linear" || opts.method == "dare_ties") {
      uint64_t nh = hash_name(bt.name);
      for (size_t m = 0; m < k; ++m) {
        uint64_t seed = model_seed(opts.dare_seed, m);
        for (size_t p = 0; p < n; ++p) {
          if (uniform01(seed, nh, static_cast<uint64_t>(p)) < opts.density)
            taus[m][p] =
                static_cast<float>(static_cast<double>(taus[m][p]) / opts.density);
          else
            taus[m][p] = 0.0f;
        }
      }
    }

    std::vector<float> delta(n, 0.0f);
    if (opts.method == "dare_linear") {
      for (size_t p = 0; p < n; ++p) {
        double s = 0.0;
        for (size_t m = 0; m < k; ++m) s += taus[m][p];
        delta[p] = static_cast<float>(s / static_cast<double>(k));
      }
    } else if (opts.method == "ties" || opts.method == "dare_ties") {
      std::vector<std::vector<char>> masks(k);
      for (size_t m = 0; m < k; ++m) masks[m] = trim_mask(taus[m], opts.density);
      for (size_t p = 0; p < n; ++p) {
        double total = 0.0;
        for (size_t m = 0; m < k; ++m)
          if (masks[m][p]) total += taus[m][p];
        if (total == 0.0) continue;
        bool positive = total > 0.0;
        double acc = 0.0;
        int cnt = 0;
        for (size_t m = 0; m < k; ++m) {
          if (!masks[m][p]) continue;
          float v = taus[m][p];
          if ((positive && v > 0.0f) || (!positive && v < 0.0f)) {
            acc += v;
            ++cnt;
          }
        }
        if (cnt) delta[p] = static_cast<float>(acc / cnt);
      }
    } else {
      throw std::runtime_error("reference merge: unknown method " + opts.method);
    }

    for (size_t p = 0; p < n; ++p)
      ot.data[p] = static_cast<float>(static_cast<double>(bt.data[p]) +
                                      opts.weight * static_cast<double>(delta[p]));
    out.tensors.push_back(std::move(ot));
  }
  return out;
}

}  // namespace capdrift::ref
