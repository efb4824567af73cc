#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "miniccg/heuristics/evaluator.h"

namespace miniccg {

// Model bundle, little-endian:
//   "CFMB" | u32 version (1) | str layout version
//   | u32 embedding dim | u32 card count | f32 vectors[card count * dim]
//   | u32 vocab size | (str token, u32 index) per vocab entry
//   | 2 x (u64 length | model file bytes), seat 0 first
//   u64 FNV-1a-64 checksum of every preceding byte
inline constexpr std::uint32_t kBundleVersion = 1;

std::vector<std::uint8_t> serialize_bundle(const ValueModel& model);
// Throws LoadError on malformed data or a layout this build does not use.
ValueModel deserialize_bundle(std::span<const std::uint8_t> bytes);

void save_bundle(const ValueModel& model, const std::string& path);
ValueModel load_bundle(const std::string& path);

}  // namespace miniccg
