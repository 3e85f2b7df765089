#include "newscov/synth.hpp"

#include <stdexcept>
#include <string>

#include "newscov/rng.hpp"

namespace newscov {

namespace {

std::string padded_name(char prefix, std::int32_t index, int width) {
  const std::string digits = std::to_string(index);
  std::string name(1, prefix);
  if (static_cast<int>(digits.size()) < width) {
    name.append(static_cast<std::size_t>(width) - digits.size(), '0');
  }
  name += digits;
  return name;
}

int digits_for(std::int32_t n) {
  int width = 1;
  for (std::int32_t v = n - 1; v >= 10; v /= 10) ++width;
  return width;
}

}  // namespace

std::vector<MentionRecord> synth_mentions(const BlockSynthConfig& config) {
  if (config.num_sources < 1 || config.num_events < 1) {
    throw std::invalid_argument("synth: dimensions must be positive");
  }
  if (config.source_blocks < 1 || config.event_blocks < 1 ||
      config.source_blocks > config.num_sources ||
      config.event_blocks > config.num_events) {
    throw std::invalid_argument("synth: bad block counts");
  }
  if (config.within_block_prob < 0.0 || config.within_block_prob > 1.0 ||
      config.cross_block_prob < 0.0 || config.cross_block_prob > 1.0) {
    throw std::invalid_argument("synth: probabilities must lie in [0, 1]");
  }
  if (config.window_days < 1) {
    throw std::invalid_argument("synth: window must span at least a day");
  }

  // Zero-padded names make lexicographic order equal numeric order, so the
  // filtered dataset's indices line up with the generator's.
  const int source_width = digits_for(config.num_sources);
  const int event_width = digits_for(config.num_events);

  const Instant span =
      static_cast<Instant>(config.window_days) * 24 * 60 * 60;
  SeededRng rng(config.seed);
  std::vector<MentionRecord> records;
  for (std::int32_t s = 0; s < config.num_sources; ++s) {
    const std::int64_t source_block =
        static_cast<std::int64_t>(s) * config.source_blocks /
        config.num_sources;
    for (std::int32_t e = 0; e < config.num_events; ++e) {
      const std::int64_t event_block =
          static_cast<std::int64_t>(e) * config.event_blocks /
          config.num_events;
      const double p = source_block == event_block
                           ? config.within_block_prob
                           : config.cross_block_prob;
      if (!rng.next_bernoulli(p)) continue;
      const Instant time =
          config.window_start +
          static_cast<Instant>(rng.next_index(static_cast<std::size_t>(span)));
      records.push_back(MentionRecord{padded_name('e', e, event_width),
                                      padded_name('s', s, source_width),
                                      time});
    }
  }
  return records;
}

InteractionDataset synth_dataset(const BlockSynthConfig& config) {
  const auto records = synth_mentions(config);
  const TimeWindow window{
      config.window_start,
      config.window_start +
          static_cast<Instant>(config.window_days) * 24 * 60 * 60};
  return build_dataset(records, window, config.min_events,
                       config.min_sources);
}

}  // namespace newscov
