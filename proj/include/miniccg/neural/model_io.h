#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "miniccg/neural/value_network.h"

namespace miniccg {

// Model file layout, all integers and floats little-endian:
//   "CFNN" | u32 version (1) | u32 layer count
//   per layer: u32 in | u32 out | u8 activation (0 none, 1 tanh, 2 softmax)
//              | f32 weights[out * in] (row-major) | f32 biases[out]
//   u64 FNV-1a-64 checksum of every preceding byte
inline constexpr std::uint32_t kModelVersion = 1;

std::vector<std::uint8_t> serialize_model(const Net& net);
// Throws LoadError on bad magic, version, checksum, truncation, or when
// `expected_input_dim` is given and differs from the model's.
Net deserialize_model(std::span<const std::uint8_t> bytes, std::optional<int> expected_input_dim = std::nullopt);

void save_model(const Net& net, const std::string& path);
Net load_model(const std::string& path, std::optional<int> expected_input_dim = std::nullopt);

// Little-endian byte buffer helpers shared by the other binary formats.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void str(const std::string& s);  // u32 length + bytes
  std::vector<std::uint8_t>& buffer() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> data, std::string what) : data_(data), what_(std::move(what)) {}
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  std::span<const std::uint8_t> bytes(std::size_t n);
  std::string str();
  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n);
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::string what_;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace miniccg
