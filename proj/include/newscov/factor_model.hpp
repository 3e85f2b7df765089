#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "newscov/scorer.hpp"

namespace newscov {

/// Latent factor embeddings, one column per source / event. Column-major
/// storage keeps an entity's vector contiguous.
struct FactorModel {
  Eigen::MatrixXd source_factors;  // k x num_sources
  Eigen::MatrixXd event_factors;   // k x num_events

  Eigen::Index k() const { return source_factors.rows(); }
  Eigen::Index num_sources() const { return source_factors.cols(); }
  Eigen::Index num_events() const { return event_factors.cols(); }
};

/// Gaussian N(0, scale^2) initialization, reproducible from the seed.
FactorModel init_model(std::int32_t num_sources, std::int32_t num_events,
                       std::int32_t k, std::uint64_t seed,
                       double scale = 0.1);

/// Predicted affinity of a source for an event.
double score(const FactorModel& model, std::int32_t source,
             std::int32_t event);

/// score(s, pos) - score(s, neg), the quantity ranking losses act on.
double score_triplet(const FactorModel& model, std::int32_t source,
                     std::int32_t pos_event, std::int32_t neg_event);

class ModelScorer final : public Scorer {
 public:
  explicit ModelScorer(const FactorModel& model) : model_(model) {}
  double score(std::int32_t source, std::int32_t event) const override {
    return newscov::score(model_, source, event);
  }
  std::string name() const override { return "mf"; }

 private:
  const FactorModel& model_;
};

}  // namespace newscov
