#include "capdrift/merge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "capdrift/merge/rng.hpp"

namespace capdrift {

std::string merge_method_name(MergeMethod m) {
  switch (m) {
    case MergeMethod::linear: return "linear";
    case MergeMethod::ties: return "ties";
    case MergeMethod::dare_linear: return "dare_linear";
    case MergeMethod::dare_ties: return "dare_ties";
  }
  return "?";
}

MergeMethod parse_merge_method(const std::string& s) {
  if (s == "linear") return MergeMethod::linear;
  if (s == "ties") return MergeMethod::ties;
  if (s == "dare_linear") return MergeMethod::dare_linear;
  if (s == "dare_ties") return MergeMethod::dare_ties;
  throw std::runtime_error("unknown merge method: " + s);
}

namespace {

int sign_of(double v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

long trim_count(double density, long n) {
  long keep = static_cast<long>(std::ceil(density * static_cast<double>(n)));
  return std::min(keep, n);
}

}  // namespace

std::vector<float> task_vector_values(const std::vector<float>& adapted,
                                      const std::vector<float>& base) {
  long n = static_cast<long>(base.size());
  std::vector<float> tau(base.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p)
    tau[static_cast<size_t>(p)] =
        adapted[static_cast<size_t>(p)] - base[static_cast<size_t>(p)];
  return tau;
}

void dare_sparsify_values(std::vector<float>& tau, double density,
                          uint64_t seed, uint64_t name_hash) {
  long n = static_cast<long>(tau.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p) {
    size_t sp = static_cast<size_t>(p);
    if (uniform01(seed, name_hash, static_cast<uint64_t>(p)) < density)
      tau[sp] = static_cast<float>(static_cast<double>(tau[sp]) / density);
    else
      tau[sp] = 0.0f;
  }
}

std::vector<float> ties_combine_values(
    const std::vector<std::vector<float>>& taus, double density) {
  if (taus.empty()) throw std::runtime_error("ties_combine: no task vectors");
  size_t models = taus.size();
  long n = static_cast<long>(taus[0].size());
  long keep = trim_count(density, n);

  std::vector<std::vector<float>> trimmed(models);
  for (size_t m = 0; m < models; ++m) {
    trimmed[m] = taus[m];
    if (keep >= n) continue;
    std::vector<long> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0L);
    const std::vector<float>& v = trimmed[m];
    std::nth_element(idx.begin(), idx.begin() + keep, idx.end(),
                     [&v](long a, long b) {
                       float ma = std::fabs(v[static_cast<size_t>(a)]);
                       float mb = std::fabs(v[static_cast<size_t>(b)]);
                       if (ma != mb) return ma > mb;
                       return a < b;
                     });
    for (long j = keep; j < n; ++j)
      trimmed[m][static_cast<size_t>(idx[static_cast<size_t>(j)])] = 0.0f;
  }

  std::vector<float> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p) {
    size_t sp = static_cast<size_t>(p);
    double total = 0.0;
    for (size_t m = 0; m < models; ++m) total += trimmed[m][sp];
    int gamma = sign_of(total);
    if (gamma == 0) {
      out[sp] = 0.0f;
      continue;
    }
    double acc = 0.0;
    long cnt = 0;
    for (size_t m = 0; m < models; ++m) {
      float v = trimmed[m][sp];
      if (sign_of(v) == gamma) {
        acc += v;
        ++cnt;
      }
    }
    out[sp] = cnt ? static_cast<float>(acc / static_cast<double>(cnt)) : 0.0f;
  }
  return out;
}

std::vector<float> merge_tensor_values(
    const std::vector<float>& base,
    const std::vector<std::vector<float>>& adapted, const std::string& name,
    const MergeOptions& opts) {
  if (adapted.empty())
    throw std::runtime_error("merge: need at least one adapted checkpoint");
  const double w = opts.weight;
  if (w == 0.0) return base;  // exact endpoint, whatever the method

  long n = static_cast<long>(base.size());
  std::vector<float> out(base.size());

  if (opts.method == MergeMethod::linear) {
#pragma omp parallel for schedule(static)
    for (long p = 0; p < n; ++p) {
      size_t sp = static_cast<size_t>(p);
      double s = 0.0;
      for (const auto& a : adapted) s += a[sp];
      double mean = s / static_cast<double>(adapted.size());
      out[sp] = static_cast<float>((1.0 - w) * base[sp] + w * mean);
    }
    return out;
  }

  uint64_t nh = hash_name(name);
  std::vector<std::vector<float>> taus;
  taus.reserve(adapted.size());
  for (const auto& a : adapted) taus.push_back(task_vector_values(a, base));
  if (opts.method == MergeMethod::dare_linear ||
      opts.method == MergeMethod::dare_ties)
    for (size_t i = 0; i < taus.size(); ++i)
      dare_sparsify_values(taus[i], opts.density,
                           model_seed(opts.dare_seed, i), nh);

  std::vector<float> delta;
  if (opts.method == MergeMethod::dare_linear) {
    delta.resize(base.size());
#pragma omp parallel for schedule(static)
    for (long p = 0; p < n; ++p) {
      size_t sp = static_cast<size_t>(p);
      double s = 0.0;
      for (const auto& tau : taus) s += tau[sp];
      delta[sp] = static_cast<float>(s / static_cast<double>(taus.size()));
    }
  } else {
    delta = ties_combine_values(taus, opts.density);
  }

#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p) {
    size_t sp = static_cast<size_t>(p);
    out[sp] = static_cast<float>(static_cast<double>(base[sp]) +
                                 w * static_cast<double>(delta[sp]));
  }
  return out;
}

Checkpoint task_vector(const Checkpoint& adapted, const Checkpoint& base) {
  Checkpoint tau;
  tau.tensors.reserve(base.tensors.size());
  for (size_t ti = 0; ti < base.tensors.size(); ++ti) {
    Tensor t;
    t.name = base.tensors[ti].name;
    t.dtype = base.tensors[ti].dtype;
    t.shape = base.tensors[ti].shape;
    t.data = task_vector_values(adapted.tensors[ti].data, base.tensors[ti].data);
    tau.tensors.push_back(std::move(t));
  }
  return tau;
}

void dare_sparsify(Checkpoint& tau, double density, uint64_t seed) {
  for (auto& t : tau.tensors)
    dare_sparsify_values(t.data, density, seed, hash_name(t.name));
}

Checkpoint ties_combine(const std::vector<Checkpoint>& taus, double density) {
  if (taus.empty()) throw std::runtime_error("ties_combine: no task vectors");
  Checkpoint out;
  out.tensors.reserve(taus[0].tensors.size());
  for (size_t ti = 0; ti < taus[0].tensors.size(); ++ti) {
    std::vector<std::vector<float>> slices;
    slices.reserve(taus.size());
    for (const auto& tau : taus) slices.push_back(tau.tensors[ti].data);
    Tensor t;
    t.name = taus[0].tensors[ti].name;
    t.dtype = taus[0].tensors[ti].dtype;
    t.shape = taus[0].tensors[ti].shape;
    t.data = ties_combine_values(slices, density);
    out.tensors.push_back(std::move(t));
  }
  return out;
}

Checkpoint merge_checkpoints(const Checkpoint& base,
                             const std::vector<Checkpoint>& adapted,
                             const MergeOptions& opts) {
  if (adapted.empty())
    throw std::runtime_error("merge: need at least one adapted checkpoint");
  for (size_t i = 0; i < adapted.size(); ++i) {
    auto mm = geometry_mismatches(base, adapted[i]);
    if (!mm.empty())
      throw std::runtime_error("merge: adapted checkpoint " +
                               std::to_string(i) +
                               " does not match the base: " + mm.front());
  }

  Checkpoint out;
  out.tensors.resize(base.tensors.size());
  long ntensors = static_cast<long>(base.tensors.size());
#pragma omp parallel for schedule(dynamic)
  for (long ti = 0; ti < ntensors; ++ti) {
    size_t t = static_cast<size_t>(ti);
    std::vector<std::vector<float>> slices;
    slices.reserve(adapted.size());
    for (const auto& a : adapted) slices.push_back(a.tensors[t].data);
    Tensor& o = out.tensors[t];
    o.name = base.tensors[t].name;
    o.dtype = base.tensors[t].dtype;
    o.shape = base.tensors[t].shape;
    o.data = merge_tensor_values(base.tensors[t].data, slices, o.name, opts);
  }
  return out;
}

}  // namespace capdrift
