#include "capdrift/merge/container.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "capdrift/merge/dtype.hpp"
#include "capdrift/util/fs.hpp"
#include "json.hpp"

namespace capdrift {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

}  // namespace

long ContainerEntry::numel() const {
  long n = 1;
  for (long s : shape) n *= s;
  return n;
}

ContainerIndex read_container_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  uint64_t file_size = std::filesystem::file_size(path);
  if (file_size < 8) fail(path, "truncated header length");

  unsigned char lenbuf[8];
  in.read(reinterpret_cast<char*>(lenbuf), 8);
  if (!in) fail(path, "truncated header length");
  uint64_t hlen = 0;
  for (int i = 7; i >= 0; --i) hlen = (hlen << 8) | lenbuf[i];
  if (8 + hlen > file_size) fail(path, "header length exceeds file size");

  std::string hjson(hlen, '\0');
  in.read(hjson.data(), static_cast<std::streamsize>(hlen));
  if (!in) fail(path, "truncated header");

  nlohmann::ordered_json header;
  try {
    header = nlohmann::ordered_json::parse(hjson);
  } catch (const std::exception& e) {
    fail(path, std::string("bad header json: ") + e.what());
  }
  if (!header.is_object()) fail(path, "header is not an object");

  ContainerIndex index;
  index.data_start = 8 + hlen;
  index.data_size = file_size - index.data_start;

  uint64_t expected = 0;  // offsets must tile the buffer in header order
  for (auto& [name, entry] : header.items()) {
    if (name == "__metadata__") continue;
    if (!entry.is_object() || !entry.contains("dtype") ||
        !entry.contains("shape") || !entry.contains("data_offsets"))
      fail(path, "tensor '" + name + "': malformed header entry");

    ContainerEntry e;
    e.name = name;
    e.dtype = parse_dtype(entry.at("dtype").get<std::string>());
    for (const auto& d : entry.at("shape")) {
      long dim = d.get<long>();
      if (dim < 0) fail(path, "tensor '" + name + "': negative dimension");
      e.shape.push_back(dim);
    }
    const auto& off = entry.at("data_offsets");
    if (!off.is_array() || off.size() != 2)
      fail(path, "tensor '" + name + "': data_offsets is not a pair");
    e.begin = off[0].get<uint64_t>();
    e.end = off[1].get<uint64_t>();
    uint64_t want = static_cast<uint64_t>(e.numel()) * dtype_size(e.dtype);
    if (e.begin != expected)
      fail(path, "tensor '" + name + "': data_offsets leave a gap");
    if (e.end < e.begin || e.end - e.begin != want)
      fail(path, "tensor '" + name + "': data_offsets disagree with shape");
    if (e.end > index.data_size)
      fail(path, "tensor '" + name + "': data_offsets past end of buffer");
    expected = e.end;
    index.entries.push_back(std::move(e));
  }
  if (expected != index.data_size) fail(path, "trailing bytes after last tensor");
  return index;
}

std::vector<float> decode_values(const char* bytes, DType dtype, long count) {
  std::vector<float> out(static_cast<size_t>(count));
  switch (dtype) {
    case DType::f32:
      std::memcpy(out.data(), bytes, static_cast<size_t>(count) * 4);
      break;
    case DType::f16:
    case DType::bf16:
      for (long i = 0; i < count; ++i) {
        uint16_t bits;
        std::memcpy(&bits, bytes + i * 2, 2);
        out[static_cast<size_t>(i)] =
            dtype == DType::f16 ? f16_to_f32(bits) : bf16_to_f32(bits);
      }
      break;
  }
  return out;
}

std::string encode_values(const std::vector<float>& vals, DType dtype) {
  std::string out;
  switch (dtype) {
    case DType::f32:
      out.resize(vals.size() * 4);
      std::memcpy(out.data(), vals.data(), out.size());
      break;
    case DType::f16:
    case DType::bf16:
      out.resize(vals.size() * 2);
      for (size_t i = 0; i < vals.size(); ++i) {
        uint16_t bits =
            dtype == DType::f16 ? f32_to_f16(vals[i]) : f32_to_bf16(vals[i]);
        std::memcpy(out.data() + i * 2, &bits, 2);
      }
      break;
  }
  return out;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  ContainerIndex index = read_container_index(path);
  std::string raw = read_file(path);
  const char* buf = raw.data() + index.data_start;

  Checkpoint ckpt;
  ckpt.tensors.reserve(index.entries.size());
  for (const auto& e : index.entries) {
    Tensor t;
    t.name = e.name;
    t.dtype = e.dtype;
    t.shape = e.shape;
    t.data = decode_values(buf + e.begin, e.dtype, e.numel());
    ckpt.tensors.push_back(std::move(t));
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  std::string buffer;
  for (const auto& t : ckpt.tensors) {
    if (t.data.size() != static_cast<size_t>(t.numel()))
      fail(path, "tensor '" + t.name + "': data size disagrees with shape");
    uint64_t begin = buffer.size();
    buffer += encode_values(t.data, t.dtype);
    header[t.name] = {{"dtype", dtype_name(t.dtype)},
                      {"shape", t.shape},
                      {"data_offsets", {begin, buffer.size()}}};
  }

  std::string hjson = header.dump();
  std::string out;
  out.reserve(8 + hjson.size() + buffer.size());
  uint64_t hlen = hjson.size();
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((hlen >> (8 * i)) & 0xFF));
  out += hjson;
  out += buffer;
  write_file_atomic(path, out);
}

}  // namespace capdrift
