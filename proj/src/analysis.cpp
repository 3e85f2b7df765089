#include "newscov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace newscov {

Eigen::VectorXd pairwise_distances(const FactorModel& model,
                                   std::span<const std::int32_t> subset) {
  if (subset.size() < 2) {
    throw std::invalid_argument("distances: need at least two sources");
  }
  for (const std::int32_t s : subset) {
    if (s < 0 || s >= model.num_sources()) {
      throw std::out_of_range("distances: source index out of range");
    }
  }
  const std::size_t m = subset.size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(m * (m - 1) / 2));
  Eigen::Index at = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto lhs = model.source_factors.col(subset[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      out[at++] = (lhs - model.source_factors.col(subset[j])).norm();
    }
  }
  return out;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("pearson: need at least two points");
  }
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (!(denom > 0.0)) {
    throw std::invalid_argument("pearson: constant input");
  }
  return da.dot(db) / denom;
}

std::vector<std::string> rank_common_sources(
    std::span<const WeekSources> weeks) {
  if (weeks.empty()) {
    throw std::invalid_argument("common sources: no weeks given");
  }
  for (const WeekSources& week : weeks) {
    if (static_cast<Eigen::Index>(week.names.size()) !=
        week.activity.size()) {
      throw std::invalid_argument("common sources: names / activity mismatch");
    }
  }

  std::unordered_map<std::string, std::pair<std::size_t, std::int64_t>>
      tally;  // name -> (weeks seen, summed activity)
  for (const WeekSources& week : weeks) {
    for (std::size_t i = 0; i < week.names.size(); ++i) {
      auto& entry = tally[week.names[i]];
      ++entry.first;
      entry.second += week.activity[static_cast<Eigen::Index>(i)];
    }
  }

  std::vector<std::pair<std::int64_t, std::string>> common;
  for (auto& [name, entry] : tally) {
    if (entry.first == weeks.size()) common.emplace_back(entry.second, name);
  }
  std::sort(common.begin(), common.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<std::string> names;
  names.reserve(common.size());
  for (auto& [activity, name] : common) names.push_back(std::move(name));
  return names;
}

double cross_week_correlation(const FactorModel& model_a,
                              std::span<const std::string> names_a,
                              const FactorModel& model_b,
                              std::span<const std::string> names_b,
                              std::span<const std::string> common_by_activity,
                              std::int32_t top_m) {
  if (top_m < 2) {
    throw std::invalid_argument("correlation: top_m must be >= 2");
  }
  if (static_cast<Eigen::Index>(names_a.size()) != model_a.num_sources() ||
      static_cast<Eigen::Index>(names_b.size()) != model_b.num_sources()) {
    throw std::invalid_argument("correlation: names / model size mismatch");
  }

  std::unordered_map<std::string_view, std::int32_t> index_a;
  for (std::size_t i = 0; i < names_a.size(); ++i) {
    index_a.emplace(names_a[i], static_cast<std::int32_t>(i));
  }
  std::unordered_map<std::string_view, std::int32_t> index_b;
  for (std::size_t i = 0; i < names_b.size(); ++i) {
    index_b.emplace(names_b[i], static_cast<std::int32_t>(i));
  }

  std::vector<std::int32_t> subset_a;
  std::vector<std::int32_t> subset_b;
  for (const std::string& name : common_by_activity) {
    if (static_cast<std::int32_t>(subset_a.size()) == top_m) break;
    const auto a = index_a.find(name);
    const auto b = index_b.find(name);
    if (a == index_a.end() || b == index_b.end()) {
      throw std::invalid_argument("correlation: name missing from a model: " +
                                  name);
    }
    subset_a.push_back(a->second);
    subset_b.push_back(b->second);
  }
  if (subset_a.size() < 2) {
    throw std::invalid_argument("correlation: fewer than two common sources");
  }
  return pearson(pairwise_distances(model_a, subset_a),
                 pairwise_distances(model_b, subset_b));
}

}  // namespace newscov
