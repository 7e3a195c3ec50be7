#pragma once

// Inertial Regularization and Selection: the per-epoch sparse estimator that
// shrinks toward the state predicted from the previous epoch.
//
// For one epoch the loss is
//
//   (1/2n) (y - X th)' W^-1 (y - X th)                       residual part
// + (tau/2p) (th - th_pred)' Sigma_pred^-1 (th - th_pred)     inertia part
// + (lambda/p) sum_i |th_i| / |th*_i|                         selection part
//
// where th* is the inertia-regularized least-squares anchor returned by
// inertial_ols(). The first two parts form the smooth term f.

#include "irs/model.hpp"

#include <cstddef>
#include <vector>

namespace irs {

enum class StepRule {
  constant,
  /// Backtrack by halving whenever a trial step raises the objective or
  /// overshoots the quadratic majorizer, and grow the step by
  /// DescentConfig::step_growth after every accepted step.
  halving_on_increase,
};

struct DescentConfig {
  int max_iters = 500;
  double step0 = 1.0;
  StepRule step_rule = StepRule::halving_on_increase;
  /// Stop when the relative objective decrease of an accepted step falls below tol.
  double tol = 1e-8;
  /// Coordinates with |th*_i| below this are pinned to zero when lambda > 0.
  double adapt_floor = 1e-10;
  double step_growth = 2.0;
  int max_halvings = 60;

  /// Throws ConfigError on non-positive settings.
  void validate() const;
};

/// Data and prior stacked so that the smooth loss becomes a least-squares norm.
struct AugmentedData {
  Matrix X_tilde;  ///< (n + p) x p
  Vector y_tilde;  ///< n + p
};

struct DescentResult {
  Vector theta;
  Vector theta_star;
  int iterations = 0;
  /// Objective after initialization and after each accepted step.
  std::vector<double> trace;
  bool converged = false;
};

struct LossParts {
  double residual = 0.0;
  double inertia = 0.0;
  double selection = 0.0;
  double total() const { return residual + inertia + selection; }
};

/// th_pred = F th, Sigma_pred = F Sigma F' + Q.
PredictedState predict_state(const ModelState& prev, const StateTransition& trans);

/// th* = (X'W^-1X + tau* Sigma_pred^-1)^-1 (X'W^-1 y + tau* Sigma_pred^-1 th_pred).
/// Throws NumericalError("inertial OLS singular") when the system has no
/// positive-definite factorization.
Vector inertial_ols(const EpochData& data, const PredictedState& pred, const NoiseSpec& noise,
                    double tau);

/// Proximal operator of nu |x|.
double soft_threshold(double x, double nu);

/// Gradient of the smooth part f at theta.
Vector loss_gradient(const Vector& theta, const EpochData& data, const PredictedState& pred,
                     const NoiseSpec& noise, double tau);

/// The three loss components evaluated directly from residuals.
LossParts loss_parts(const Vector& theta, const EpochData& data, const PredictedState& pred,
                     const NoiseSpec& noise, const Hyperparams& hp, const Vector& theta_star,
                     double adapt_floor = DescentConfig{}.adapt_floor);

/// Full per-epoch objective; equals loss_parts(...).total().
double objective(const Vector& theta, const EpochData& data, const PredictedState& pred,
                 const NoiseSpec& noise, const Hyperparams& hp, const Vector& theta_star,
                 double adapt_floor = DescentConfig{}.adapt_floor);

/// Stacks (1/sqrt(2n)) W^{-1/2} [X | y] over sqrt(tau/2p) Sigma_pred^{-1/2} [I | th_pred].
/// With tau == 0 the lower block is zero and Sigma_pred is not factored.
AugmentedData augment_data(const EpochData& data, const PredictedState& pred,
                           const NoiseSpec& noise, double tau);

/// Proximal gradient descent started from th*.
DescentResult proximal_descent(const EpochData& data, const PredictedState& pred,
                               const NoiseSpec& noise, const Hyperparams& hp,
                               const DescentConfig& cfg = {});

/// Coordinate-wise solution for an orthonormal design (X'X = I), W = w2 I and a
/// diagonal Sigma_pred = diag(rho). Throws DataError("orthogonality violated")
/// if X'X deviates from I by more than 1e-8.
Vector closed_form_orthogonal(const EpochData& data, const Vector& theta_pred, const Vector& rho,
                              double w2, const Hyperparams& hp,
                              double adapt_floor = DescentConfig{}.adapt_floor);

/// Sandwich covariance A^-1 (X'W^-1X + tau*^2 Sigma_pred^-1) A^-1 with
/// A = X'W^-1X + lambda D^-1 + tau* Sigma_pred^-1. D uses |th_i||th*_i| for
/// selected coordinates and |th*_i|^2 otherwise, with |th*_i| clamped below by
/// adapt_floor.
Matrix covariance_estimate(const Vector& theta_hat, const Vector& theta_star,
                           const EpochData& data, const PredictedState& pred,
                           const NoiseSpec& noise, const Hyperparams& hp,
                           double adapt_floor = DescentConfig{}.adapt_floor);

/// Lower bound applied to the residual variance estimate inside irs_step().
inline constexpr double kMinResidualVariance = 1e-12;

struct StepDiagnostics {
  int iterations = 0;
  bool converged = false;
  double w2 = 0.0;
  std::vector<double> trace;
};

/// One sequential epoch: predict, estimate w2 from the prediction residuals,
/// run proximal descent and update the covariance. The returned state has
/// t = prev.t() + 1.
ModelState irs_step(const ModelState& prev, const EpochData& data, const StateTransition& trans,
                    const Hyperparams& hp, const DescentConfig& cfg = {},
                    StepDiagnostics* diagnostics = nullptr);

/// Appends n_new zero coefficients with an uncorrelated prior variance block.
/// Throws ConfigError when n_new < 1 or prior_variance <= 0.
ModelState expand_model(const ModelState& state, Index n_new, double prior_variance);

}  // namespace irs
