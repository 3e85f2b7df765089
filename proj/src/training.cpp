#include "newscov/training.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "newscov/math.hpp"

namespace newscov {

Triplet sample_triplet(const InteractionDataset& train, SeededRng& rng) {
  const auto& rows = train.interactions();
  if (rows.empty()) {
    throw std::invalid_argument("sample_triplet: no interactions");
  }
  const Interaction& picked = rows[rng.next_index(rows.size())];
  const std::int32_t source = picked.source;
  if (train.events_of_source(source).size() ==
      static_cast<std::size_t>(train.num_events())) {
    throw std::runtime_error("sample_triplet: source covers every event");
  }
  std::int32_t neg;
  do {
    neg = static_cast<std::int32_t>(
        rng.next_index(static_cast<std::size_t>(train.num_events())));
  } while (train.covers(source, neg));
  return Triplet{source, picked.event, neg};
}

void bpr_step(FactorModel& model, const Triplet& triplet, double alpha,
              double lambda) {
  auto p = model.source_factors.col(triplet.source);
  auto q_pos = model.event_factors.col(triplet.pos_event);
  auto q_neg = model.event_factors.col(triplet.neg_event);

  const Eigen::VectorXd p_old = p;
  const Eigen::VectorXd diff = q_pos - q_neg;
  const double g = logistic(-p_old.dot(diff));

  p += alpha * (g * diff - lambda * p_old);
  q_pos += alpha * (g * p_old - lambda * q_pos);
  q_neg += alpha * (-g * p_old - lambda * q_neg);
}

namespace {

constexpr std::uint64_t kSamplerSalt = 0x5aa7e1c3d94bULL;

double probe_objective(const FactorModel& model,
                       const std::vector<Triplet>& probe) {
  if (probe.empty()) return 0.0;
  double sum = 0.0;
  for (const Triplet& t : probe) {
    sum += log_logistic(score_triplet(model, t.source, t.pos_event,
                                      t.neg_event));
  }
  return sum / static_cast<double>(probe.size());
}

}  // namespace

TrainResult train(const InteractionDataset& train_set,
                  const TrainConfig& config, const EpochObserver& observer) {
  if (config.epochs < 1) {
    throw std::invalid_argument("train: need at least one epoch");
  }
  if (!(config.alpha > 0.0) || config.lambda < 0.0) {
    throw std::invalid_argument("train: bad learning rate or shrinkage");
  }
  if (train_set.interactions().empty()) {
    throw std::invalid_argument("train: empty training set");
  }

  TrainResult result;
  result.model = init_model(train_set.num_sources(), train_set.num_events(),
                            config.k, config.seed, config.init_scale);

  // Separate stream from init so changing k does not reshuffle sampling.
  SeededRng sampler(mix64(config.seed ^ kSamplerSalt));
  std::vector<Triplet> probe;
  probe.reserve(static_cast<std::size_t>(std::max(config.probe_size, 0)));
  for (std::int32_t i = 0; i < config.probe_size; ++i) {
    probe.push_back(sample_triplet(train_set, sampler));
  }

  const std::size_t steps_per_epoch = train_set.interactions().size();
  result.log.reserve(static_cast<std::size_t>(config.epochs));
  for (std::int32_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    for (std::size_t step = 0; step < steps_per_epoch; ++step) {
      bpr_step(result.model, sample_triplet(train_set, sampler), config.alpha,
               config.lambda);
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - started;
    EpochDiag diag{epoch, probe_objective(result.model, probe),
                   elapsed.count()};
    result.log.push_back(diag);
    if (observer) observer(diag, result.model);
  }
  return result;
}

}  // namespace newscov
