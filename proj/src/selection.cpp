#include "newscov/selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace newscov {

Eigen::VectorXd relevance_scores(const InteractionDataset& train) {
  const Eigen::VectorXi counts = train.source_activity_counts();
  if (counts.size() == 0) {
    throw std::invalid_argument("relevance: empty dataset");
  }
  const double max_count = counts.maxCoeff();
  if (max_count <= 0.0) {
    throw std::invalid_argument("relevance: no interactions");
  }
  return counts.cast<double>() / max_count;
}

double similarity(const FactorModel& model, std::int32_t a, std::int32_t b,
                  double epsilon) {
  if (a == b) {
    throw std::invalid_argument("similarity: identical source indices");
  }
  if (a < 0 || a >= model.num_sources() || b < 0 ||
      b >= model.num_sources()) {
    throw std::out_of_range("similarity: source index out of range");
  }
  const double dist =
      (model.source_factors.col(a) - model.source_factors.col(b)).norm();
  return 1.0 / std::max(dist, epsilon);
}

SelectionResult mmr_select(const FactorModel& model,
                           const Eigen::VectorXd& relevance,
                           const SelectionConfig& config) {
  const auto n_sources = static_cast<std::int32_t>(relevance.size());
  if (n_sources == 0) {
    throw std::invalid_argument("mmr: empty relevance vector");
  }
  if (model.num_sources() != n_sources) {
    throw std::invalid_argument("mmr: model / relevance size mismatch");
  }
  if (config.n < 1 || config.n > n_sources) {
    throw std::invalid_argument("mmr: selection size out of range");
  }
  if (config.beta < 0.0 || config.beta > 1.0) {
    throw std::invalid_argument("mmr: beta must lie in [0, 1]");
  }
  if (!(config.epsilon > 0.0)) {
    throw std::invalid_argument("mmr: epsilon must be positive");
  }

  SelectionResult result;
  result.picks.reserve(static_cast<std::size_t>(config.n));
  result.scores.reserve(static_cast<std::size_t>(config.n));

  std::vector<char> picked(static_cast<std::size_t>(n_sources), 0);
  // Running max similarity to the picked set, updated once per round.
  std::vector<double> max_sim(static_cast<std::size_t>(n_sources), 0.0);

  for (std::int32_t round = 0; round < config.n; ++round) {
    std::int32_t best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::int32_t s = 0; s < n_sources; ++s) {
      if (picked[static_cast<std::size_t>(s)]) continue;
      const double value =
          round == 0 ? relevance[s]
                     : config.beta * relevance[s] -
                           (1.0 - config.beta) *
                               max_sim[static_cast<std::size_t>(s)];
      if (value > best_score) {
        best_score = value;
        best = s;
      }
    }
    picked[static_cast<std::size_t>(best)] = 1;
    result.picks.push_back(best);
    result.scores.push_back(best_score);
    for (std::int32_t s = 0; s < n_sources; ++s) {
      if (picked[static_cast<std::size_t>(s)]) continue;
      max_sim[static_cast<std::size_t>(s)] =
          std::max(max_sim[static_cast<std::size_t>(s)],
                   similarity(model, s, best, config.epsilon));
    }
  }
  return result;
}

}  // namespace newscov
