#pragma once

#include <cmath>

namespace trustclust {

/// Logistic function, evaluated on the branch that avoids overflow in exp().
inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double sigmoid_grad(double x) {
  const double s = sigmoid(x);
  return s * (1.0 - s);
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace trustclust
