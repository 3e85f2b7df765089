#pragma once

#include <cstdint>
#include <vector>

#include "newscov/dataset.hpp"

namespace newscov {

/// Planted block structure: sources and events both split into equally
/// sized blocks, block i of sources mentioning block i of events densely
/// and everything else sparsely. Gives embeddings something to find.
struct BlockSynthConfig {
  std::int32_t num_sources = 200;
  std::int32_t num_events = 2000;
  std::int32_t source_blocks = 4;
  std::int32_t event_blocks = 4;
  double within_block_prob = 0.3;
  double cross_block_prob = 0.01;
  /// Window start; mention times are uniform inside the window.
  Instant window_start = 1475280000;  // 2016-10-01T00:00:00Z
  std::int32_t window_days = 7;
  int min_events = 5;
  int min_sources = 5;
  std::uint64_t seed = 1;
};

std::vector<MentionRecord> synth_mentions(const BlockSynthConfig& config);

/// synth_mentions piped through the standard filter with the config's
/// thresholds and window.
InteractionDataset synth_dataset(const BlockSynthConfig& config);

}  // namespace newscov
