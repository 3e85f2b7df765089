#pragma once

#include <cmath>

namespace newscov {

/// Logistic sigmoid, stable for large |x|.
inline double logistic(double x) {
  if (x >= 0.0) {
    const double z = std::exp(-x);
    return 1.0 / (1.0 + z);
  }
  const double z = std::exp(x);
  return z / (1.0 + z);
}

/// log(logistic(x)) without intermediate overflow or underflow to -inf
/// until x is hugely negative.
inline double log_logistic(double x) {
  if (x >= 0.0) {
    return -std::log1p(std::exp(-x));
  }
  return x - std::log1p(std::exp(x));
}

}  // namespace newscov
