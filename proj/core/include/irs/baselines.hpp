#pragma once

// Comparison estimators: the Kalman filter in gain form and in information
// form, and an adaptive Lasso fitted to each epoch on its own.

#include "irs/estimator.hpp"
#include "irs/model.hpp"

namespace irs {

/// K = Sigma_pred X' (W + X Sigma_pred X' / tau*)^-1, a p x n matrix.
Matrix kalman_gain(const PredictedState& pred, const Matrix& X, const NoiseSpec& noise,
                   double tau_star);

/// Gain-form update. theta = th_pred + K (y - X th_pred) / tau*. The covariance
/// is (I - K X) Sigma_pred when tau* == 1; for other tau* it falls back to the
/// lambda = 0 sandwich of covariance_estimate().
ModelState kalman_step(const ModelState& prev, const EpochData& data, const StateTransition& trans,
                       const NoiseSpec& noise, double tau_star = 1.0);

/// Information-form update; only p x p systems are factored.
ModelState kalman_step_fast(const ModelState& prev, const EpochData& data,
                            const StateTransition& trans, const NoiseSpec& noise);

/// Ridge added to X'X when the local least-squares anchor is singular.
inline constexpr double kLocalAnchorRidge = 1e-6;

/// Adaptive Lasso on one epoch alone:
/// (1/2n) ||y - X th||^2 + (lambda/p) sum_i |th_i| / |th0_i|, th0 the OLS anchor.
Vector local_adaptive_lasso(const EpochData& data, double lambda, const DescentConfig& cfg = {});

}  // namespace irs
