#pragma once

#include <filesystem>
#include <string>

#include "capdrift/merge/tensor.hpp"

namespace capdrift {

// Single-file tensor container: an 8-byte little-endian header length, a JSON
// header mapping tensor name -> {dtype, shape, data_offsets:[begin,end]}, then
// one contiguous data buffer. Header key order is the tensor order and the
// offsets must tile the buffer exactly in that order. A "__metadata__" entry
// is tolerated on read and never written.

struct ContainerEntry {
  std::string name;
  DType dtype = DType::f32;
  std::vector<long> shape;
  uint64_t begin = 0;  // offsets into the data buffer
  uint64_t end = 0;

  long numel() const;
};

struct ContainerIndex {
  std::vector<ContainerEntry> entries;  // header order
  uint64_t data_start = 0;              // file offset of the data buffer
  uint64_t data_size = 0;
};

// Header parse + full validation (shape/offset agreement, exact tiling)
// without touching tensor payloads; throws with the path on any defect.
ContainerIndex read_container_index(const std::filesystem::path& path);

// Payload codecs; `count` values of `dtype` at `bytes`.
std::vector<float> decode_values(const char* bytes, DType dtype, long count);
std::string encode_values(const std::vector<float>& vals, DType dtype);

Checkpoint load_checkpoint(const std::filesystem::path& path);

// Writes via a temp file + rename. Tensor payloads are narrowed back to each
// tensor's recorded on-disk dtype (round-to-nearest-even).
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

}  // namespace capdrift
