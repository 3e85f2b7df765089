#include "newscov/dataset.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "newscov/rng.hpp"

namespace newscov {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint64_t pair_key(std::int32_t source, std::int32_t event) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(source))
          << 32) |
         static_cast<std::uint32_t>(event);
}

}  // namespace

int MentionFormat::min_columns() const {
  return std::max({event_id_column, source_column, time_column}) + 1;
}

ParseResult parse_mentions(std::istream& in, const MentionFormat& format,
                           bool strict) {
  if (format.event_id_column < 0 || format.source_column < 0 ||
      format.time_column < 0) {
    throw std::invalid_argument("parse_mentions: negative column index");
  }
  ParseResult result;
  const auto min_cols = static_cast<std::size_t>(format.min_columns());
  std::string line;
  while (std::getline(in, line)) {
    ++result.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      ++result.lines_skipped;
      if (strict) {
        throw std::runtime_error("parse_mentions: empty line " +
                                 std::to_string(result.lines_read));
      }
      continue;
    }
    const auto fields = split_tabs(line);
    std::string reason;
    std::optional<Instant> time;
    if (fields.size() < min_cols) {
      reason = "expected at least " + std::to_string(min_cols) + " columns";
    } else if (fields[static_cast<std::size_t>(format.event_id_column)]
                   .empty()) {
      reason = "empty event id";
    } else if (fields[static_cast<std::size_t>(format.source_column)]
                   .empty()) {
      reason = "empty source name";
    } else {
      time = parse_instant(
          fields[static_cast<std::size_t>(format.time_column)]);
      if (!time) reason = "bad timestamp";
    }
    if (!reason.empty()) {
      ++result.lines_skipped;
      if (strict) {
        throw std::runtime_error("parse_mentions: line " +
                                 std::to_string(result.lines_read) + ": " +
                                 reason);
      }
      continue;
    }
    result.records.push_back(MentionRecord{
        std::string(fields[static_cast<std::size_t>(format.event_id_column)]),
        std::string(fields[static_cast<std::size_t>(format.source_column)]),
        *time});
  }
  return result;
}

InteractionDataset::InteractionDataset(std::vector<std::string> sources,
                                       std::vector<std::string> events,
                                       std::vector<Interaction> interactions,
                                       TimeWindow window)
    : sources_(std::move(sources)),
      events_(std::move(events)),
      interactions_(std::move(interactions)),
      window_(window) {
  std::sort(interactions_.begin(), interactions_.end(),
            [](const Interaction& a, const Interaction& b) {
              return std::tie(a.source, a.event) < std::tie(b.source, b.event);
            });
  const auto num_s = num_sources();
  const auto num_e = num_events();
  offsets_.assign(static_cast<std::size_t>(num_s) + 1, 0);
  flat_events_.reserve(interactions_.size());
  std::int32_t prev_source = 0;
  std::int64_t prev_key = -1;
  for (const Interaction& it : interactions_) {
    if (it.source < 0 || it.source >= num_s || it.event < 0 ||
        it.event >= num_e) {
      throw std::invalid_argument("dataset: interaction index out of range");
    }
    if (!window_.contains(it.time)) {
      throw std::invalid_argument("dataset: interaction outside window");
    }
    const auto key = static_cast<std::int64_t>(pair_key(it.source, it.event));
    if (key == prev_key) {
      throw std::invalid_argument("dataset: duplicate (source, event) pair");
    }
    prev_key = key;
    while (prev_source < it.source) {
      offsets_[++prev_source] = static_cast<std::int32_t>(flat_events_.size());
    }
    flat_events_.push_back(it.event);
  }
  while (prev_source < num_s) {
    offsets_[++prev_source] = static_cast<std::int32_t>(flat_events_.size());
  }
  source_lookup_.reserve(sources_.size());
  for (std::int32_t i = 0; i < num_s; ++i) {
    if (!source_lookup_.emplace(sources_[static_cast<std::size_t>(i)], i)
             .second) {
      throw std::invalid_argument("dataset: duplicate source name");
    }
  }
  event_lookup_.reserve(events_.size());
  for (std::int32_t i = 0; i < num_e; ++i) {
    if (!event_lookup_.emplace(events_[static_cast<std::size_t>(i)], i)
             .second) {
      throw std::invalid_argument("dataset: duplicate event id");
    }
  }
}

std::span<const Interaction> InteractionDataset::interactions_of_source(
    std::int32_t s) const {
  if (s < 0 || s >= num_sources()) {
    throw std::out_of_range("dataset: source index out of range");
  }
  const auto begin = static_cast<std::size_t>(offsets_[s]);
  const auto end = static_cast<std::size_t>(offsets_[s + 1]);
  return {interactions_.data() + begin, end - begin};
}

std::span<const std::int32_t> InteractionDataset::events_of_source(
    std::int32_t s) const {
  if (s < 0 || s >= num_sources()) {
    throw std::out_of_range("dataset: source index out of range");
  }
  const auto begin = static_cast<std::size_t>(offsets_[s]);
  const auto end = static_cast<std::size_t>(offsets_[s + 1]);
  return {flat_events_.data() + begin, end - begin};
}

bool InteractionDataset::covers(std::int32_t source, std::int32_t event) const {
  const auto events = events_of_source(source);
  return std::binary_search(events.begin(), events.end(), event);
}

std::optional<std::int32_t> InteractionDataset::source_index(
    std::string_view name) const {
  // Heterogeneous lookup needs a transparent hash; a temporary string is
  // cheap enough for the access patterns here.
  const auto it = source_lookup_.find(std::string(name));
  if (it == source_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int32_t> InteractionDataset::event_index(
    std::string_view id) const {
  const auto it = event_lookup_.find(std::string(id));
  if (it == event_lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXi InteractionDataset::event_coverage_counts() const {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(num_events());
  for (const std::int32_t e : flat_events_) ++counts[e];
  return counts;
}

Eigen::VectorXi InteractionDataset::source_activity_counts() const {
  Eigen::VectorXi counts(num_sources());
  for (std::int32_t s = 0; s < num_sources(); ++s) {
    counts[s] = offsets_[s + 1] - offsets_[s];
  }
  return counts;
}

InteractionDataset build_dataset(std::span<const MentionRecord> records,
                                 const TimeWindow& window, int min_events,
                                 int min_sources) {
  if (window.empty()) {
    throw std::invalid_argument("build_dataset: empty time window");
  }
  if (min_events < 1 || min_sources < 1) {
    throw std::invalid_argument("build_dataset: thresholds must be >= 1");
  }

  // Intern names on first sight; indices are provisional until the final
  // lexicographic reindexing below.
  std::unordered_map<std::string, std::int32_t> source_ids;
  std::unordered_map<std::string, std::int32_t> event_ids;
  std::vector<std::string> source_names;
  std::vector<std::string> event_names;
  std::unordered_map<std::uint64_t, Instant> earliest;
  for (const MentionRecord& record : records) {
    if (!window.contains(record.mention_time)) continue;
    auto [sit, s_new] = source_ids.try_emplace(
        record.source_name, static_cast<std::int32_t>(source_names.size()));
    if (s_new) source_names.push_back(record.source_name);
    auto [eit, e_new] = event_ids.try_emplace(
        record.event_id, static_cast<std::int32_t>(event_names.size()));
    if (e_new) event_names.push_back(record.event_id);
    const std::uint64_t key = pair_key(sit->second, eit->second);
    auto [pit, inserted] = earliest.try_emplace(key, record.mention_time);
    if (!inserted && record.mention_time < pit->second) {
      pit->second = record.mention_time;
    }
  }

  std::vector<Interaction> pairs;
  pairs.reserve(earliest.size());
  for (const auto& [key, time] : earliest) {
    pairs.push_back(Interaction{static_cast<std::int32_t>(key >> 32),
                                static_cast<std::int32_t>(key & 0xffffffffu),
                                time});
  }

  // Alternate the two threshold rules until a full pass removes nothing.
  // Dropping a source can push events below min_sources and vice versa.
  std::vector<char> source_alive(source_names.size(), 1);
  std::vector<char> event_alive(event_names.size(), 1);
  std::vector<std::int32_t> source_degree(source_names.size());
  std::vector<std::int32_t> event_degree(event_names.size());
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(source_degree.begin(), source_degree.end(), 0);
    std::fill(event_degree.begin(), event_degree.end(), 0);
    for (const Interaction& p : pairs) {
      if (!source_alive[static_cast<std::size_t>(p.source)] ||
          !event_alive[static_cast<std::size_t>(p.event)]) {
        continue;
      }
      ++source_degree[static_cast<std::size_t>(p.source)];
      ++event_degree[static_cast<std::size_t>(p.event)];
    }
    for (std::size_t s = 0; s < source_alive.size(); ++s) {
      if (source_alive[s] && source_degree[s] < min_events) {
        source_alive[s] = 0;
        changed = true;
      }
    }
    for (std::size_t e = 0; e < event_alive.size(); ++e) {
      if (event_alive[e] && event_degree[e] < min_sources) {
        event_alive[e] = 0;
        changed = true;
      }
    }
  }

  std::vector<std::string> kept_sources;
  for (std::size_t s = 0; s < source_names.size(); ++s) {
    if (source_alive[s]) kept_sources.push_back(source_names[s]);
  }
  std::vector<std::string> kept_events;
  for (std::size_t e = 0; e < event_names.size(); ++e) {
    if (event_alive[e]) kept_events.push_back(event_names[e]);
  }
  if (kept_sources.empty() || kept_events.empty()) {
    throw std::runtime_error(
        "build_dataset: no interactions survive filtering");
  }
  std::sort(kept_sources.begin(), kept_sources.end());
  std::sort(kept_events.begin(), kept_events.end());

  std::unordered_map<std::string, std::int32_t> final_source;
  for (std::size_t i = 0; i < kept_sources.size(); ++i) {
    final_source.emplace(kept_sources[i], static_cast<std::int32_t>(i));
  }
  std::unordered_map<std::string, std::int32_t> final_event;
  for (std::size_t i = 0; i < kept_events.size(); ++i) {
    final_event.emplace(kept_events[i], static_cast<std::int32_t>(i));
  }

  std::vector<Interaction> kept;
  for (const Interaction& p : pairs) {
    if (!source_alive[static_cast<std::size_t>(p.source)] ||
        !event_alive[static_cast<std::size_t>(p.event)]) {
      continue;
    }
    kept.push_back(Interaction{
        final_source.at(source_names[static_cast<std::size_t>(p.source)]),
        final_event.at(event_names[static_cast<std::size_t>(p.event)]),
        p.time});
  }

  return InteractionDataset(std::move(kept_sources), std::move(kept_events),
                            std::move(kept), window);
}

SplitPair split_leave_one_out(const InteractionDataset& dataset,
                              const TimeWindow& holdout_window,
                              std::uint64_t seed) {
  if (holdout_window.empty()) {
    throw std::invalid_argument("split: empty holdout window");
  }
  if (!dataset.window().contains(holdout_window)) {
    throw std::invalid_argument("split: holdout exceeds dataset window");
  }

  SplitPair out;
  out.holdout = holdout_window;
  out.seed = seed;
  out.eval.seed = seed;
  SeededRng rng(seed);

  const std::int32_t num_events = dataset.num_events();
  std::vector<std::uint64_t> removed;
  for (std::int32_t s = 0; s < dataset.num_sources(); ++s) {
    const auto rows = dataset.interactions_of_source(s);
    std::vector<std::int32_t> candidates;
    for (const Interaction& it : rows) {
      if (holdout_window.contains(it.time)) candidates.push_back(it.event);
    }
    if (candidates.empty()) {
      ++out.sources_without_holdout;
      continue;
    }
    if (rows.size() == 1) {
      ++out.sources_skipped_sole_interaction;
      continue;
    }
    if (static_cast<std::int64_t>(rows.size()) == num_events) {
      ++out.sources_skipped_full_coverage;
      continue;
    }
    const std::int32_t pos = candidates[rng.next_index(candidates.size())];
    std::int32_t neg;
    do {
      neg = static_cast<std::int32_t>(
          rng.next_index(static_cast<std::size_t>(num_events)));
    } while (dataset.covers(s, neg));
    out.eval.triplets.push_back(EvalTriplet{s, pos, neg});
    removed.push_back(pair_key(s, pos));
  }

  std::sort(removed.begin(), removed.end());
  std::vector<Interaction> train_rows;
  train_rows.reserve(dataset.interactions().size() - removed.size());
  for (const Interaction& it : dataset.interactions()) {
    if (std::binary_search(removed.begin(), removed.end(),
                           pair_key(it.source, it.event))) {
      continue;
    }
    train_rows.push_back(it);
  }
  out.train =
      InteractionDataset(dataset.source_names(), dataset.event_ids(),
                         std::move(train_rows), dataset.window());
  return out;
}

}  // namespace newscov
