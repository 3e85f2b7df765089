#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "newscov/factor_model.hpp"

namespace newscov {

/// Condensed pairwise Euclidean distances between the subset's source
/// embeddings, in (i, j) order with i < j over subset positions.
Eigen::VectorXd pairwise_distances(const FactorModel& model,
                                   std::span<const std::int32_t> subset);

/// Pearson correlation. Throws when the vectors differ in length, are
/// shorter than 2, or either is constant.
double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// One model's source vocabulary with per-source activity, as needed to
/// align several independently trained models.
struct WeekSources {
  std::vector<std::string> names;  // index-aligned with the model's columns
  Eigen::VectorXi activity;
};

/// Names present in every week, ordered by total activity descending
/// (ties lexicographic). The stable ranking for "top m common sources".
std::vector<std::string> rank_common_sources(
    std::span<const WeekSources> weeks);

/// Pearson correlation between the two models' condensed distance vectors
/// over the first top_m common names. The name lists are each model's
/// column vocabulary.
double cross_week_correlation(const FactorModel& model_a,
                              std::span<const std::string> names_a,
                              const FactorModel& model_b,
                              std::span<const std::string> names_b,
                              std::span<const std::string> common_by_activity,
                              std::int32_t top_m);

}  // namespace newscov
