#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "newscov/eval.hpp"
#include "newscov/instant.hpp"

namespace newscov {

/// One mention of an event by a source, as read from a mentions table.
struct MentionRecord {
  std::string event_id;
  std::string source_name;
  Instant mention_time = 0;
};

/// Column positions inside a tab-separated mentions file. Defaults match
/// the GDELT v2 mentions layout (GlobalEventID, ..., MentionTimeDate, ...,
/// MentionSourceName, ...).
struct MentionFormat {
  int event_id_column = 0;
  int source_column = 4;
  int time_column = 2;

  int min_columns() const;

  static MentionFormat gdelt() { return {0, 4, 2}; }
  /// event_id <TAB> source_name <TAB> timestamp
  static MentionFormat simple() { return {0, 1, 2}; }
};

struct ParseResult {
  std::vector<MentionRecord> records;
  std::size_t lines_read = 0;
  std::size_t lines_skipped = 0;
};

/// Reads tab-separated mention lines in file order. Malformed lines
/// (too few columns, empty ids, unparseable timestamps) are counted and
/// skipped in lenient mode; strict mode throws on the first one.
ParseResult parse_mentions(std::istream& in, const MentionFormat& format,
                           bool strict = false);

struct Interaction {
  std::int32_t source = 0;
  std::int32_t event = 0;
  Instant time = 0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// One-class source x event coverage matrix in sparse triplet form, with
/// dense, lexicographically ordered source/event indices. Immutable after
/// construction and safe to share read-only across threads.
class InteractionDataset {
 public:
  InteractionDataset() = default;
  InteractionDataset(std::vector<std::string> sources,
                     std::vector<std::string> events,
                     std::vector<Interaction> interactions, TimeWindow window);

  std::int32_t num_sources() const {
    return static_cast<std::int32_t>(sources_.size());
  }
  std::int32_t num_events() const {
    return static_cast<std::int32_t>(events_.size());
  }
  const std::vector<std::string>& source_names() const { return sources_; }
  const std::vector<std::string>& event_ids() const { return events_; }
  const std::vector<Interaction>& interactions() const {
    return interactions_;
  }
  const TimeWindow& window() const { return window_; }

  /// Interactions of one source, ordered by event index.
  std::span<const Interaction> interactions_of_source(std::int32_t s) const;
  /// Event indices covered by one source, ascending.
  std::span<const std::int32_t> events_of_source(std::int32_t s) const;

  bool covers(std::int32_t source, std::int32_t event) const;

  std::optional<std::int32_t> source_index(std::string_view name) const;
  std::optional<std::int32_t> event_index(std::string_view id) const;

  /// Distinct sources covering each event.
  Eigen::VectorXi event_coverage_counts() const;
  /// Distinct events covered by each source (the source's activity).
  Eigen::VectorXi source_activity_counts() const;

  friend bool operator==(const InteractionDataset& a,
                         const InteractionDataset& b) {
    return a.sources_ == b.sources_ && a.events_ == b.events_ &&
           a.interactions_ == b.interactions_ && a.window_ == b.window_;
  }

 private:
  std::vector<std::string> sources_;
  std::vector<std::string> events_;
  std::vector<Interaction> interactions_;  // sorted by (source, event)
  std::vector<std::int32_t> offsets_;      // CSR offsets per source
  std::vector<std::int32_t> flat_events_;  // event column of interactions_
  TimeWindow window_;
  std::unordered_map<std::string, std::int32_t> source_lookup_;
  std::unordered_map<std::string, std::int32_t> event_lookup_;
};

/// Builds the filtered dataset: keeps records inside the window, collapses
/// duplicate (source, event) pairs to the earliest mention, then removes
/// low-count sources (< min_events distinct events) and low-count events
/// (< min_sources distinct sources) iteratively until neither rule fires.
/// Surviving sources and events get dense indices in lexicographic order.
InteractionDataset build_dataset(std::span<const MentionRecord> records,
                                 const TimeWindow& window, int min_events,
                                 int min_sources);

struct SplitPair {
  InteractionDataset train;
  EvalSet eval;
  TimeWindow holdout;
  std::uint64_t seed = 0;
  /// Sources with no interaction inside the holdout window.
  std::size_t sources_without_holdout = 0;
  /// Sources whose only interaction lies in the holdout window; removing it
  /// would leave them trainless, so they are skipped.
  std::size_t sources_skipped_sole_interaction = 0;
  /// Sources covering every event; no negative can be sampled for them.
  std::size_t sources_skipped_full_coverage = 0;
};

/// Leave-one-out split. For every source with at least one interaction in
/// the holdout window and at least two overall, one uniformly random
/// holdout interaction moves into the eval positives and is paired with a
/// uniformly random event the source never covered. The train set keeps the
/// dataset's index tables. Reproducible from the seed.
SplitPair split_leave_one_out(const InteractionDataset& dataset,
                              const TimeWindow& holdout_window,
                              std::uint64_t seed);

}  // namespace newscov
