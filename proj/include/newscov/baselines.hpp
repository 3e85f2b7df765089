#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "newscov/dataset.hpp"
#include "newscov/scorer.hpp"

namespace newscov {

/// Jaccard distance 1 - |a & b| / |a | b| over two ascending index sets.
/// Two empty sets count as identical (distance 0).
double jaccard_distance(std::span<const std::int32_t> a,
                        std::span<const std::int32_t> b);

/// Scores every source by how many distinct sources cover the event.
class PopularityScorer final : public Scorer {
 public:
  explicit PopularityScorer(const InteractionDataset& train);
  double score(std::int32_t source, std::int32_t event) const override;
  std::string name() const override { return "popularity"; }

 private:
  std::vector<double> counts_;
};

/// Neighborhood vote: the k nearest sources by Jaccard distance over
/// covered-event sets, each voting its similarity (1 - distance) for the
/// events it covers.
class KnnScorer final : public Scorer {
 public:
  struct Neighbor {
    std::int32_t source = 0;
    double similarity = 0.0;
  };

  KnnScorer(const InteractionDataset& train, std::int32_t k);
  double score(std::int32_t source, std::int32_t event) const override;
  std::string name() const override { return "knn"; }

  std::span<const Neighbor> neighbors(std::int32_t source) const;
  /// True when some source had fewer than k candidate neighbors.
  bool truncated() const { return truncated_; }

 private:
  std::int32_t num_events_ = 0;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<std::vector<std::int32_t>> covered_;
  bool truncated_ = false;
};

/// 1 for covered pairs, 0 otherwise. An oracle that has seen the holdout
/// answers; useful only as a test ceiling.
class CoverageScorer final : public Scorer {
 public:
  explicit CoverageScorer(const InteractionDataset& dataset)
      : dataset_(dataset) {}
  double score(std::int32_t source, std::int32_t event) const override {
    return dataset_.covers(source, event) ? 1.0 : 0.0;
  }
  std::string name() const override { return "coverage"; }

 private:
  const InteractionDataset& dataset_;
};

}  // namespace newscov
