#include "capdrift/merge/tensor.hpp"

#include <stdexcept>

namespace capdrift {

std::string dtype_name(DType d) {
  switch (d) {
    case DType::f32: return "F32";
    case DType::f16: return "F16";
    case DType::bf16: return "BF16";
  }
  return "?";
}

DType parse_dtype(const std::string& s) {
  if (s == "F32") return DType::f32;
  if (s == "F16") return DType::f16;
  if (s == "BF16") return DType::bf16;
  throw std::runtime_error("unsupported dtype: " + s);
}

size_t dtype_size(DType d) { return d == DType::f32 ? 4 : 2; }

long Tensor::numel() const {
  long n = 1;
  for (long s : shape) n *= s;
  return n;
}

const Tensor* Checkpoint::find(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

long Checkpoint::total_elements() const {
  long n = 0;
  for (const auto& t : tensors) n += t.numel();
  return n;
}

std::vector<std::string> geometry_mismatches(const Checkpoint& a,
                                             const Checkpoint& b) {
  std::vector<std::string> out;
  if (a.tensors.size() != b.tensors.size())
    out.push_back("tensor count differs: " + std::to_string(a.tensors.size()) +
                  " vs " + std::to_string(b.tensors.size()));
  size_t n = std::min(a.tensors.size(), b.tensors.size());
  for (size_t i = 0; i < n; ++i) {
    const Tensor& ta = a.tensors[i];
    const Tensor& tb = b.tensors[i];
    if (ta.name != tb.name) {
      out.push_back("tensor " + std::to_string(i) + " name: '" + ta.name +
                    "' vs '" + tb.name + "'");
      continue;
    }
    if (ta.shape != tb.shape) out.push_back(ta.name + ": shape differs");
    if (ta.dtype != tb.dtype) out.push_back(ta.name + ": dtype differs");
  }
  return out;
}

}  // namespace capdrift
