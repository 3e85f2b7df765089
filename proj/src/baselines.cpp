#include "newscov/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace newscov {

double jaccard_distance(std::span<const std::int32_t> a,
                        std::span<const std::int32_t> b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

PopularityScorer::PopularityScorer(const InteractionDataset& train) {
  const Eigen::VectorXi counts = train.event_coverage_counts();
  counts_.assign(counts.data(), counts.data() + counts.size());
}

double PopularityScorer::score(std::int32_t, std::int32_t event) const {
  if (event < 0 || event >= static_cast<std::int32_t>(counts_.size())) {
    throw std::out_of_range("popularity: event index out of range");
  }
  return counts_[static_cast<std::size_t>(event)];
}

KnnScorer::KnnScorer(const InteractionDataset& train, std::int32_t k)
    : num_events_(train.num_events()) {
  if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
  const std::int32_t n = train.num_sources();
  covered_.resize(static_cast<std::size_t>(n));
  for (std::int32_t s = 0; s < n; ++s) {
    const auto events = train.events_of_source(s);
    covered_[static_cast<std::size_t>(s)].assign(events.begin(), events.end());
  }

  neighbors_.resize(static_cast<std::size_t>(n));
  std::vector<std::pair<double, std::int32_t>> ranked;
  for (std::int32_t s = 0; s < n; ++s) {
    ranked.clear();
    for (std::int32_t other = 0; other < n; ++other) {
      if (other == s) continue;
      ranked.emplace_back(
          jaccard_distance(covered_[static_cast<std::size_t>(s)],
                           covered_[static_cast<std::size_t>(other)]),
          other);
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k),
                                            ranked.size());
    if (take < static_cast<std::size_t>(k)) truncated_ = true;
    // Equal distances resolve to the lower source index.
    std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end());
    auto& mine = neighbors_[static_cast<std::size_t>(s)];
    mine.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
      mine.push_back(Neighbor{ranked[i].second, 1.0 - ranked[i].first});
    }
  }
}

std::span<const KnnScorer::Neighbor> KnnScorer::neighbors(
    std::int32_t source) const {
  if (source < 0 ||
      source >= static_cast<std::int32_t>(neighbors_.size())) {
    throw std::out_of_range("knn: source index out of range");
  }
  return neighbors_[static_cast<std::size_t>(source)];
}

double KnnScorer::score(std::int32_t source, std::int32_t event) const {
  if (event < 0 || event >= num_events_) {
    throw std::out_of_range("knn: event index out of range");
  }
  double total = 0.0;
  for (const Neighbor& nb : neighbors(source)) {
    const auto& events = covered_[static_cast<std::size_t>(nb.source)];
    if (std::binary_search(events.begin(), events.end(), event)) {
      total += nb.similarity;
    }
  }
  return total;
}

}  // namespace newscov
