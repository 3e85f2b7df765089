#include "newscov/eval.hpp"

#include <stdexcept>

#include "newscov/scorer.hpp"

namespace newscov {

AucReport auc(const Scorer& scorer, const EvalSet& eval_set) {
  if (eval_set.triplets.empty()) {
    throw std::invalid_argument("auc: evaluation set is empty");
  }
  double sum = 0.0;
  double comp = 0.0;  // Kahan correction term
  std::size_t ties = 0;
  for (const EvalTriplet& t : eval_set.triplets) {
    const double pos = scorer.score(t.source, t.pos_event);
    const double neg = scorer.score(t.source, t.neg_event);
    double credit = 0.0;
    if (pos > neg) {
      credit = 1.0;
    } else if (pos == neg) {
      credit = 0.5;
      ++ties;
    }
    const double y = credit - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return {sum / static_cast<double>(eval_set.triplets.size()),
          eval_set.triplets.size(), ties};
}

}  // namespace newscov
