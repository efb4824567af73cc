#include "miniccg/neural/model_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "miniccg/engine/errors.h"

namespace miniccg {

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

void ByteWriter::str(const std::string& s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteReader::need(std::size_t n) {
  if (remaining() < n) throw LoadError(what_ + ": truncated at byte " + std::to_string(pos_));
}

std::uint8_t ByteReader::u8() {
  need(1);
  return data_[pos_++];
}

std::uint32_t ByteReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{data_[pos_++]} << (8 * i);
  return v;
}

std::uint64_t ByteReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{data_[pos_++]} << (8 * i);
  return v;
}

float ByteReader::f32() { return std::bit_cast<float>(u32()); }

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n) {
  need(n);
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::string ByteReader::str() {
  std::uint32_t n = u32();
  auto b = bytes(n);
  return std::string(b.begin(), b.end());
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint8_t> serialize_model(const Net& net) {
  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("CFNN"), 4));
  w.u32(kModelVersion);
  w.u32(static_cast<std::uint32_t>(net.layers().size()));
  for (const auto& l : net.layers()) {
    w.u32(static_cast<std::uint32_t>(l.in));
    w.u32(static_cast<std::uint32_t>(l.out));
    w.u8(static_cast<std::uint8_t>(l.activation));
    for (float v : l.weights) w.f32(v);
    for (float v : l.biases) w.f32(v);
  }
  w.u64(fnv1a64(w.buffer()));
  return std::move(w.buffer());
}

Net deserialize_model(std::span<const std::uint8_t> bytes, std::optional<int> expected_input_dim) {
  ByteReader r(bytes, "model");
  auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), "CFNN", 4) != 0) throw LoadError("model: bad magic");
  std::uint32_t version = r.u32();
  if (version != kModelVersion) throw LoadError("model: unsupported version " + std::to_string(version));
  std::uint32_t count = r.u32();
  if (count == 0 || count > 64) throw LoadError("model: implausible layer count");
  std::vector<int> dims;
  std::vector<Activation> acts;
  std::vector<std::vector<float>> ws, bs;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t in = r.u32();
    std::uint32_t out = r.u32();
    std::uint8_t act = r.u8();
    if (in == 0 || out == 0 || out > static_cast<std::uint32_t>(Net::kMaxWidth) || in > (1u << 20)) {
      throw LoadError("model: bad layer shape");
    }
    if (act > 2) throw LoadError("model: bad activation code");
    if (!dims.empty() && static_cast<int>(in) != dims.back()) throw LoadError("model: layer shapes do not chain");
    if (dims.empty()) dims.push_back(static_cast<int>(in));
    dims.push_back(static_cast<int>(out));
    acts.push_back(static_cast<Activation>(act));
    if (r.remaining() < (std::size_t(in) * out + out) * 4) throw LoadError("model: truncated layer data");
    std::vector<float> w(std::size_t(in) * out), b(out);
    for (float& v : w) v = r.f32();
    for (float& v : b) v = r.f32();
    ws.push_back(std::move(w));
    bs.push_back(std::move(b));
  }
  std::size_t body = r.offset();
  std::uint64_t checksum = r.u64();
  if (checksum != fnv1a64(bytes.first(body))) throw LoadError("model: checksum mismatch");
  if (r.remaining() != 0) throw LoadError("model: trailing bytes");
  if (expected_input_dim && *expected_input_dim != dims.front()) {
    throw LoadError("model: input dimension " + std::to_string(dims.front()) + " does not match expected " +
                    std::to_string(*expected_input_dim));
  }
  Net net(dims, acts);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    net.layers()[i].weights = std::move(ws[i]);
    net.layers()[i].biases = std::move(bs[i]);
  }
  net.sync();
  return net;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

void save_model(const Net& net, const std::string& path) { write_file(path, serialize_model(net)); }

Net load_model(const std::string& path, std::optional<int> expected_input_dim) {
  return deserialize_model(read_file(path), expected_input_dim);
}

}  // namespace miniccg
