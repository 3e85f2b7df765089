#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace newscov {

/// Seconds since the Unix epoch, UTC.
using Instant = std::int64_t;

/// Half-open time range [start, end).
struct TimeWindow {
  Instant start = 0;
  Instant end = 0;

  bool contains(Instant t) const { return t >= start && t < end; }
  bool contains(const TimeWindow& other) const {
    return other.start >= start && other.end <= end && !other.empty();
  }
  bool empty() const { return end <= start; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Parses "yyyyMMddHHmmss" (GDELT mention times), "YYYY-MM-DDTHH:MM:SSZ"
/// and "YYYY-MM-DD" (midnight UTC). Returns nullopt on anything else.
std::optional<Instant> parse_instant(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_instant(Instant t);

}  // namespace newscov
