#include "newscov/factor_model.hpp"

#include <stdexcept>

#include "newscov/rng.hpp"

namespace newscov {

FactorModel init_model(std::int32_t num_sources, std::int32_t num_events,
                       std::int32_t k, std::uint64_t seed, double scale) {
  if (num_sources <= 0 || num_events <= 0 || k <= 0) {
    throw std::invalid_argument("init_model: dimensions must be positive");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("init_model: scale must be positive");
  }
  FactorModel model;
  model.source_factors.resize(k, num_sources);
  model.event_factors.resize(k, num_events);
  SeededRng rng(seed);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index i = 0; i < model.source_factors.size(); ++i) {
    model.source_factors.data()[i] = scale * rng.next_gaussian();
  }
  for (Eigen::Index i = 0; i < model.event_factors.size(); ++i) {
    model.event_factors.data()[i] = scale * rng.next_gaussian();
  }
  return model;
}

double score(const FactorModel& model, std::int32_t source,
             std::int32_t event) {
  if (source < 0 || source >= model.num_sources()) {
    throw std::out_of_range("score: source index out of range");
  }
  if (event < 0 || event >= model.num_events()) {
    throw std::out_of_range("score: event index out of range");
  }
  return model.source_factors.col(source).dot(model.event_factors.col(event));
}

double score_triplet(const FactorModel& model, std::int32_t source,
                     std::int32_t pos_event, std::int32_t neg_event) {
  return score(model, source, pos_event) - score(model, source, neg_event);
}

}  // namespace newscov
