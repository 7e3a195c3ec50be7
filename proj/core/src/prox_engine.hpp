#pragma once

// Shared proximal-gradient loop for weighted-L1 problems with a quadratic
// smooth part f(th) = 0.5 th'H th - b'th + c.

#include "irs/estimator.hpp"

#include <vector>

namespace irs::detail {

struct WeightedL1Problem {
  Matrix H;
  Vector b;
  double c = 0.0;
  /// g(th) = sum_i weights_i |th_i|
  Vector weights;
  /// Pinned coordinates are held at exactly zero.
  std::vector<bool> pinned;

  double smooth(const Vector& theta) const {
    return 0.5 * theta.dot(H * theta) - b.dot(theta) + c;
  }
  double penalty(const Vector& theta) const {
    return weights.dot(theta.cwiseAbs());
  }
  double value(const Vector& theta) const { return smooth(theta) + penalty(theta); }
  Vector gradient(const Vector& theta) const { return H * theta - b; }
};

/// Adaptive weights lambda / (p |anchor_i|), pinning |anchor_i| < floor when lambda > 0.
void set_adaptive_weights(WeightedL1Problem& problem, const Vector& anchor, double lambda,
                          double adapt_floor);

DescentResult run_proximal_gradient(const WeightedL1Problem& problem, Vector start,
                                    const DescentConfig& cfg);

}  // namespace irs::detail
