#pragma once

#include <cstdint>
#include <string>

#include "newscov/rng.hpp"

namespace newscov {

/// Scoring capability shared by the model and the baselines:
/// (source_index, event_index) -> real, higher means more likely coverage.
/// Implementations are immutable after construction and safe to score from
/// many threads.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(std::int32_t source, std::int32_t event) const = 0;
  virtual std::string name() const = 0;
};

/// Seeded pseudo-random scores, constant per (source, event) pair.
/// Calibration instrument: its AUC should sit at chance level.
class RandomScorer final : public Scorer {
 public:
  explicit RandomScorer(std::uint64_t seed) : salt_(mix64(seed)) {}

  double score(std::int32_t source, std::int32_t event) const override {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(source))
         << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(event));
    return static_cast<double>(mix64(key ^ salt_) >> 11) * 0x1.0p-53;
  }

  std::string name() const override { return "random"; }

 private:
  std::uint64_t salt_;
};

}  // namespace newscov
