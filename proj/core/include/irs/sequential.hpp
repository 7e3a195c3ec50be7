#pragma once

// Runs one estimation method over a stream of epochs and scores held-out rows.

#include "irs/baselines.hpp"
#include "irs/estimator.hpp"
#include "irs/simgen.hpp"

#include <optional>
#include <string>
#include <vector>

namespace irs {

enum class Method { irs, kalman, kalman_fast, lasso_local };

std::string to_string(Method m);
/// Accepts "irs", "kalman", "kalman-fast", "lasso-local". Throws ConfigError otherwise.
Method method_from_string(const std::string& name);

struct SequentialSettings {
  Method method = Method::irs;
  Hyperparams hp{0.1, 1.0};
  DescentConfig descent{};
  /// Q = process_noise_sd^2 I, F = I.
  double process_noise_sd = 0.01;
  /// Prior variance for predictors that appear mid-stream.
  double new_predictor_variance = 100.0;
  /// Standardize every epoch's training rows before fitting.
  bool standardize = true;
};

/// A single method's sequential state. All state is kept in the standardized
/// coordinates of the epoch that produced it.
class SequentialModel {
 public:
  explicit SequentialModel(SequentialSettings settings);

  /// Consume one epoch. The first call initializes the state from an OLS fit
  /// (ridge-stabilized when singular) with unit covariance, then runs the
  /// regular update on the same epoch.
  void update(const EpochData& train);

  /// Predictions on the response scale for raw rows of the last epoch.
  Vector predict(const Matrix& X) const;

  bool initialized() const { return state_.has_value(); }
  const ModelState& state() const;
  const Scaler& scaler() const { return scaler_; }
  const SequentialSettings& settings() const { return settings_; }
  /// Descent iterations used by the most recent IRS update (0 otherwise).
  int last_iterations() const { return last_iterations_; }

 private:
  ModelState initial_state(const EpochData& data) const;

  SequentialSettings settings_;
  std::optional<ModelState> state_;
  Scaler scaler_;
  int last_iterations_ = 0;
};

/// Held-out predictions for one epoch, pooled over folds.
struct EpochPredictions {
  std::vector<double> y;
  std::vector<double> yhat;
  bool failed = false;
  std::string error;
};

/// Rows of one epoch split into train and test.
EpochData select_rows(const EpochData& data, const std::vector<Index>& rows);

}  // namespace irs
