#include "miniccg/pipeline/dataset_io.h"

#include <cstring>

#include "miniccg/engine/errors.h"
#include "miniccg/neural/model_io.h"

namespace miniccg {

void save_dataset(const std::string& path, const Dataset& data) {
  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("CFDS"), 4));
  w.u32(kDatasetVersion);
  w.str(data.layout_version);
  w.u32(static_cast<std::uint32_t>(data.dim));
  w.u64(data.samples.size());
  for (const TrainingSample& s : data.samples) {
    if (static_cast<int>(s.features.size()) != data.dim) throw ContractViolation("save_dataset: sample dimension");
    for (float f : s.features) w.f32(f);
    w.f32(s.score[0]);
    w.f32(s.score[1]);
    w.u32(static_cast<std::uint32_t>(s.meta.generation));
    w.u32(static_cast<std::uint32_t>(s.meta.game));
    w.u32(static_cast<std::uint32_t>(s.meta.turn));
    w.u32(static_cast<std::uint32_t>(s.meta.seat));
  }
  w.u64(fnv1a64(w.buffer()));
  write_file(path, w.buffer());
}

Dataset load_dataset(const std::string& path) {
  std::vector<std::uint8_t> bytes = read_file(path);
  ByteReader r(bytes, "dataset '" + path + "'");
  if (std::memcmp(r.bytes(4).data(), "CFDS", 4) != 0) throw LoadError("dataset '" + path + "': bad magic");
  if (std::uint32_t v = r.u32(); v != kDatasetVersion) {
    throw LoadError("dataset '" + path + "': unsupported version " + std::to_string(v));
  }
  Dataset d;
  d.layout_version = r.str();
  d.dim = static_cast<int>(r.u32());
  std::uint64_t count = r.u64();
  const std::size_t record = (std::size_t(d.dim) + 2 + 4) * 4;
  if (d.dim <= 0 || count > r.remaining() / record) throw LoadError("dataset '" + path + "': truncated");
  d.samples.resize(count);
  for (auto& s : d.samples) {
    s.features.resize(d.dim);
    for (float& f : s.features) f = r.f32();
    s.score[0] = r.f32();
    s.score[1] = r.f32();
    s.meta.generation = static_cast<std::int32_t>(r.u32());
    s.meta.game = static_cast<std::int32_t>(r.u32());
    s.meta.turn = static_cast<std::int32_t>(r.u32());
    s.meta.seat = static_cast<std::int32_t>(r.u32());
  }
  std::size_t body = r.offset();
  if (r.u64() != fnv1a64(std::span<const std::uint8_t>(bytes).first(body))) {
    throw LoadError("dataset '" + path + "': checksum mismatch");
  }
  if (r.remaining() != 0) throw LoadError("dataset '" + path + "': trailing bytes");
  return d;
}

}  // namespace miniccg
