#include "miniccg/pipeline/bundle.h"

#include <cstring>

#include "miniccg/engine/errors.h"
#include "miniccg/neural/model_io.h"

namespace miniccg {

std::vector<std::uint8_t> serialize_bundle(const ValueModel& model) {
  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("CFMB"), 4));
  w.u32(kBundleVersion);
  w.str(model.layout.version());
  const EmbeddingTable& e = model.embeddings;
  w.u32(static_cast<std::uint32_t>(e.dim()));
  w.u32(static_cast<std::uint32_t>(e.card_count()));
  for (float f : e.data()) w.f32(f);
  w.u32(static_cast<std::uint32_t>(e.vocab().size()));
  for (const auto& [tok, idx] : e.vocab()) {
    w.str(tok);
    w.u32(static_cast<std::uint32_t>(idx));
  }
  for (const Net& net : model.nets) {
    std::vector<std::uint8_t> blob = serialize_model(net);
    w.u64(blob.size());
    w.bytes(blob);
  }
  w.u64(fnv1a64(w.buffer()));
  return std::move(w.buffer());
}

ValueModel deserialize_bundle(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "bundle");
  if (std::memcmp(r.bytes(4).data(), "CFMB", 4) != 0) throw LoadError("bundle: bad magic");
  if (std::uint32_t v = r.u32(); v != kBundleVersion) throw LoadError("bundle: unsupported version " + std::to_string(v));
  std::string layout_version = r.str();
  int dim = static_cast<int>(r.u32());
  int cards = static_cast<int>(r.u32());
  if (dim <= 0 || dim > 64 || cards <= 0 || cards > kMaxCards) throw LoadError("bundle: bad embedding shape");
  ValueModel m;
  m.layout = FeatureLayout::standard(dim);
  if (layout_version != m.layout.version()) {
    throw LoadError("bundle: layout '" + layout_version + "' does not match '" + m.layout.version() + "'");
  }
  m.embeddings = EmbeddingTable(dim, cards);
  for (int c = 0; c < cards; ++c) {
    for (float& f : m.embeddings.vector(static_cast<CardId>(c))) f = r.f32();
  }
  std::uint32_t vocab = r.u32();
  if (vocab > 100000) throw LoadError("bundle: implausible vocabulary size");
  for (std::uint32_t i = 0; i < vocab; ++i) {
    std::string tok = r.str();
    m.embeddings.vocab()[tok] = static_cast<int>(r.u32());
  }
  for (Net& net : m.nets) {
    std::uint64_t len = r.u64();
    if (len > r.remaining()) throw LoadError("bundle: truncated model");
    net = deserialize_model(r.bytes(len), m.layout.total_dim);
  }
  std::size_t body = r.offset();
  if (r.u64() != fnv1a64(bytes.first(body))) throw LoadError("bundle: checksum mismatch");
  if (r.remaining() != 0) throw LoadError("bundle: trailing bytes");
  return m;
}

void save_bundle(const ValueModel& model, const std::string& path) { write_file(path, serialize_bundle(model)); }

ValueModel load_bundle(const std::string& path) {
  try {
    return deserialize_bundle(read_file(path));
  } catch (const LoadError& e) {
    throw LoadError("'" + path + "': " + e.what());
  }
}

}  // namespace miniccg
