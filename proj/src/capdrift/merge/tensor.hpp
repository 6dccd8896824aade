#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace capdrift {

enum class DType { f32, f16, bf16 };

std::string dtype_name(DType d);
DType parse_dtype(const std::string& s);  // throws on unknown
size_t dtype_size(DType d);

// In memory every tensor is f32; `dtype` remembers the on-disk type so a
// merged checkpoint is written back the way its base came in.
struct Tensor {
  std::string name;
  DType dtype = DType::f32;
  std::vector<long> shape;
  std::vector<float> data;

  long numel() const;
};

struct Checkpoint {
  std::vector<Tensor> tensors;  // on-disk order, preserved through I/O

  const Tensor* find(const std::string& name) const;
  long total_elements() const;
};

// Empty when the checkpoints share names, shapes, dtypes, and order;
// otherwise human-readable mismatch descriptions.
std::vector<std::string> geometry_mismatches(const Checkpoint& a,
                                             const Checkpoint& b);

}  // namespace capdrift
