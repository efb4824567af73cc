#pragma once

#include <string>
#include <vector>

#include "miniccg/pipeline/selfplay.h"

namespace miniccg {

// Dataset file, little-endian:
//   "CFDS" | u32 version (1) | str layout version | u32 feature dim
//   | u64 sample count
//   per sample: f32 features[dim] | f32 score[2]
//               | i32 generation | i32 game | i32 turn | i32 seat
//   u64 FNV-1a-64 checksum of every preceding byte
// (str = u32 byte length + bytes)
inline constexpr std::uint32_t kDatasetVersion = 1;

struct Dataset {
  std::string layout_version;
  int dim = 0;
  std::vector<TrainingSample> samples;
};

void save_dataset(const std::string& path, const Dataset& data);
// Throws LoadError on malformed files.
Dataset load_dataset(const std::string& path);

}  // namespace miniccg
