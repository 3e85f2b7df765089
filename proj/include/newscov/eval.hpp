#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace newscov {

class Scorer;

/// One held-out comparison: the source covered pos_event, never covered
/// neg_event.
struct EvalTriplet {
  std::int32_t source = 0;
  std::int32_t pos_event = 0;
  std::int32_t neg_event = 0;

  friend bool operator==(const EvalTriplet&, const EvalTriplet&) = default;
};

/// Leave-one-out evaluation set: at most one triplet per source. The seed
/// that fixed the sampling rides along so reruns can be traced.
struct EvalSet {
  std::vector<EvalTriplet> triplets;
  std::uint64_t seed = 0;
};

struct AucReport {
  double auc = 0.0;
  std::size_t triplets = 0;
  std::size_t ties = 0;
};

/// Pairwise ranking accuracy over the evaluation set. A triplet scores 1
/// when the positive outranks the negative, 0.5 on an exact tie, else 0.
/// Summation is compensated so the result does not depend on more than the
/// triplet order given here.
AucReport auc(const Scorer& scorer, const EvalSet& eval_set);

}  // namespace newscov
