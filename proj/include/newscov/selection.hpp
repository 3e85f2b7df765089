#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "newscov/dataset.hpp"
#include "newscov/factor_model.hpp"

namespace newscov {

struct SelectionConfig {
  std::int32_t n = 10;
  /// 1 = pure relevance, 0 = pure redundancy avoidance.
  double beta = 0.5;
  /// Floor on embedding distances before inversion.
  double epsilon = 1e-9;
};

struct SelectionResult {
  std::vector<std::int32_t> picks;
  /// Greedy objective at each pick; the first entry is plain relevance.
  std::vector<double> scores;
};

/// Source activity normalized by the maximum, so the busiest source has
/// relevance exactly 1.
Eigen::VectorXd relevance_scores(const InteractionDataset& train);

/// Inverse Euclidean distance between two source embeddings, with the
/// distance floored at epsilon. Asking for a source's similarity to itself
/// is a bug, so it throws.
double similarity(const FactorModel& model, std::int32_t a, std::int32_t b,
                  double epsilon = 1e-9);

/// Greedy maximal-marginal-relevance selection: the first pick maximizes
/// relevance, each later pick maximizes
///   beta * relevance(s) - (1 - beta) * max over picked b of sim(s, b).
/// Ties resolve to the lowest source index.
SelectionResult mmr_select(const FactorModel& model,
                           const Eigen::VectorXd& relevance,
                           const SelectionConfig& config);

}  // namespace newscov
