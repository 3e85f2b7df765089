#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "newscov/dataset.hpp"
#include "newscov/factor_model.hpp"
#include "newscov/rng.hpp"

namespace newscov {

struct TrainConfig {
  double alpha = 0.1;    // learning rate
  double lambda = 0.01;  // L2 shrinkage
  std::int32_t k = 20;
  std::int32_t epochs = 50;
  std::uint64_t seed = 1;
  double init_scale = 0.1;
  /// Triplets resampled once up front to track the ranking objective.
  std::int32_t probe_size = 1000;
};

struct Triplet {
  std::int32_t source = 0;
  std::int32_t pos_event = 0;
  std::int32_t neg_event = 0;
};

/// Uniform interaction, then a uniformly random event the source does not
/// cover. Throws if the drawn source covers every event.
Triplet sample_triplet(const InteractionDataset& train, SeededRng& rng);

/// One pairwise-ranking SGD step on (s, e+, e-):
///   g = sigma(-(p . q+ - p . q-))
///   p  += alpha (g (q+ - q-) - lambda p)
///   q+ += alpha (g p         - lambda q+)
///   q- += alpha (-g p        - lambda q-)
/// with p read before its own update.
void bpr_step(FactorModel& model, const Triplet& triplet, double alpha,
              double lambda);

struct EpochDiag {
  std::int32_t epoch = 0;
  /// Mean ln sigma(x_hat) over the probe triplets; rises toward 0 as
  /// ranking improves.
  double probe_objective = 0.0;
  double seconds = 0.0;
};

using EpochObserver =
    std::function<void(const EpochDiag&, const FactorModel&)>;

struct TrainResult {
  FactorModel model;
  std::vector<EpochDiag> log;
};

/// Runs epochs x |train interactions| SGD steps. Fully reproducible from
/// config.seed; the observer (optional) sees the model after each epoch.
TrainResult train(const InteractionDataset& train, const TrainConfig& config,
                  const EpochObserver& observer = {});

}  // namespace newscov
