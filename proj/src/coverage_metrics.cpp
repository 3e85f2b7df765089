#include "newscov/coverage_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace newscov {

double CoverageProfile::events_per_article() const {
  if (total_articles == 0) {
    throw std::domain_error("coverage: no articles in profile");
  }
  return static_cast<double>(unique_events) /
         static_cast<double>(total_articles);
}

std::vector<double> CoverageProfile::positive_counts() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(unique_events));
  for (Eigen::Index e = 0; e < counts.size(); ++e) {
    if (counts[e] > 0) out.push_back(static_cast<double>(counts[e]));
  }
  return out;
}

CoverageProfile coverage_profile(const InteractionDataset& dataset,
                                 std::span<const std::int32_t> selected) {
  if (selected.empty()) {
    throw std::invalid_argument("coverage: empty selection");
  }
  std::vector<char> take(static_cast<std::size_t>(dataset.num_sources()), 0);
  for (const std::int32_t s : selected) {
    if (s < 0 || s >= dataset.num_sources()) {
      throw std::out_of_range("coverage: source index out of range");
    }
    take[static_cast<std::size_t>(s)] = 1;
  }

  CoverageProfile profile;
  profile.counts = Eigen::VectorXi::Zero(dataset.num_events());
  for (std::int32_t s = 0; s < dataset.num_sources(); ++s) {
    if (!take[static_cast<std::size_t>(s)]) continue;
    for (const std::int32_t e : dataset.events_of_source(s)) {
      ++profile.counts[e];
      ++profile.total_articles;
    }
  }
  profile.unique_events = (profile.counts.array() > 0).count();
  return profile;
}

double gini(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("gini: empty sample");
  }
  double total = 0.0;
  for (const double v : values) {
    if (v < 0.0) throw std::invalid_argument("gini: negative value");
    total += v;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("gini: sample sums to zero");
  }
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    weighted += static_cast<double>(i + 1) * values[i];
  }
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

std::vector<LorenzPoint> lorenz_points(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("lorenz: empty sample");
  }
  double total = 0.0;
  for (const double v : values) {
    if (v < 0.0) throw std::invalid_argument("lorenz: negative value");
    total += v;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("lorenz: sample sums to zero");
  }
  std::sort(values.begin(), values.end());
  std::vector<LorenzPoint> points;
  points.reserve(values.size() + 1);
  points.push_back({0.0, 0.0});
  const auto n = static_cast<double>(values.size());
  double cumulative = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative += values[i];
    points.push_back(
        {static_cast<double>(i + 1) / n, cumulative / total});
  }
  points.back() = {1.0, 1.0};  // pin the endpoint against rounding drift
  return points;
}

double top_event_retention(const InteractionDataset& dataset,
                           std::span<const std::int32_t> selected,
                           std::int32_t top_n) {
  if (top_n < 1) {
    throw std::invalid_argument("retention: top_n must be >= 1");
  }
  const Eigen::VectorXi coverage = dataset.event_coverage_counts();
  std::vector<std::int32_t> order(
      static_cast<std::size_t>(dataset.num_events()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&coverage](std::int32_t a, std::int32_t b) {
              if (coverage[a] != coverage[b]) return coverage[a] > coverage[b];
              return a < b;
            });
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(top_n),
                                          order.size());

  const CoverageProfile profile = coverage_profile(dataset, selected);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < take; ++i) {
    if (profile.counts[order[i]] > 0) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(take);
}

}  // namespace newscov
