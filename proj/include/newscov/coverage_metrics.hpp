#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "newscov/dataset.hpp"

namespace newscov {

/// What a set of selected sources covers inside a dataset. Counts are
/// distinct selected sources per event (set semantics, never per-mention).
struct CoverageProfile {
  Eigen::VectorXi counts;  // one entry per dataset event
  std::int64_t total_articles = 0;
  std::int64_t unique_events = 0;

  double events_per_article() const;
  /// Counts restricted to covered events, as doubles.
  std::vector<double> positive_counts() const;
};

CoverageProfile coverage_profile(const InteractionDataset& dataset,
                                 std::span<const std::int32_t> selected);

/// Gini coefficient of a non-negative, not-all-zero sample. 0 for perfect
/// equality, (n-1)/n when one entry holds everything.
double gini(std::vector<double> values);

template <typename Derived>
double gini(const Eigen::MatrixBase<Derived>& values) {
  std::vector<double> copy(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    copy[static_cast<std::size_t>(i)] = static_cast<double>(values(i));
  }
  return gini(std::move(copy));
}

struct LorenzPoint {
  double population = 0.0;  // cumulative share of entries
  double mass = 0.0;        // cumulative share of the summed values
};

/// n+1 points from (0,0) to (1,1) over the ascending-sorted sample.
std::vector<LorenzPoint> lorenz_points(std::vector<double> values);

/// Share of the top_n highest-coverage events (by full-dataset coverage,
/// ties to the lower event index) that the selected set still covers.
/// top_n is clamped to the number of events.
double top_event_retention(const InteractionDataset& dataset,
                           std::span<const std::int32_t> selected,
                           std::int32_t top_n);

}  // namespace newscov
