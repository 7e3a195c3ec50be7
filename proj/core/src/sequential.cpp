#include "irs/sequential.hpp"

#include "irs/error.hpp"
#include "irs/linalg.hpp"

#include <algorithm>

namespace irs {

std::string to_string(Method m) {
  switch (m) {
    case Method::irs: return "irs";
    case Method::kalman: return "kalman";
    case Method::kalman_fast: return "kalman-fast";
    case Method::lasso_local: return "lasso-local";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "irs") return Method::irs;
  if (name == "kalman") return Method::kalman;
  if (name == "kalman-fast" || name == "kalman_fast") return Method::kalman_fast;
  if (name == "lasso-local" || name == "lasso_local") return Method::lasso_local;
  throw ConfigError("unknown method '" + name + "'");
}

EpochData select_rows(const EpochData& data, const std::vector<Index>& rows) {
  EpochData out;
  out.t = data.t;
  out.X.resize(static_cast<Index>(rows.size()), data.X.cols());
  out.y.resize(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.X.row(static_cast<Index>(r)) = data.X.row(rows[r]);
    out.y(static_cast<Index>(r)) = data.y(rows[r]);
  }
  return out;
}

namespace {

double residual_variance(const Vector& residual) {
  const double n = static_cast<double>(residual.size());
  return std::max(residual.squaredNorm() / std::max(n - 1.0, 1.0), kMinResidualVariance);
}

Scaler identity_scaler(Index p) {
  Scaler s;
  s.col_means = Vector::Zero(p);
  s.col_stds = Vector::Ones(p);
  s.zero_variance.assign(static_cast<std::size_t>(p), false);
  return s;
}

Vector least_squares_anchor(const EpochData& data) {
  const Matrix gram = symmetrize(data.X.transpose() * data.X);
  const Vector xty = data.X.transpose() * data.y;
  try {
    return SpdFactor(gram, "initial OLS").solve(xty);
  } catch (const NumericalError&) {
    Matrix ridged = gram;
    ridged.diagonal().array() += kLocalAnchorRidge;
    return SpdFactor(ridged, "ridge-stabilized initial OLS").solve(xty);
  }
}

}  // namespace

SequentialModel::SequentialModel(SequentialSettings settings) : settings_(std::move(settings)) {
  settings_.descent.validate();
  if (!(settings_.process_noise_sd >= 0.0)) {
    throw ConfigError("process noise must be non-negative");
  }
}

const ModelState& SequentialModel::state() const {
  if (!state_) throw DataError("sequential model has not seen any data");
  return *state_;
}

ModelState SequentialModel::initial_state(const EpochData& data) const {
  const Vector theta = least_squares_anchor(data);
  const double w2 = residual_variance(data.y - data.X * theta);
  const Index p = data.X.cols();
  return ModelState(theta, Matrix::Identity(p, p), w2, 0);
}

void SequentialModel::update(const EpochData& train) {
  if (train.X.rows() != train.y.size()) throw DataError("update: row/response mismatch");
  if (train.X.rows() < 2) throw DataError("update: at least two training rows are required");
  if (state_ && train.X.cols() < state_->dim()) {
    throw DataError("update: predictors cannot be removed from a running model");
  }

  // Nothing is committed until the step succeeds.
  EpochData data;
  Scaler scaler;
  if (settings_.standardize) {
    auto [standardized, fitted] = standardize(train);
    data = std::move(standardized);
    scaler = std::move(fitted);
  } else {
    data = train;
    scaler = identity_scaler(train.X.cols());
  }

  ModelState current = state_ ? *state_ : initial_state(data);
  const Index p = data.X.cols();
  if (p > current.dim()) {
    current = expand_model(current, p - current.dim(), settings_.new_predictor_variance);
  }

  const StateTransition trans = StateTransition::identity(p, settings_.process_noise_sd);
  int iterations = 0;
  std::optional<ModelState> next;
  switch (settings_.method) {
    case Method::irs: {
      StepDiagnostics diag;
      next = irs_step(current, data, trans, settings_.hp, settings_.descent, &diag);
      iterations = diag.iterations;
      break;
    }
    case Method::kalman:
    case Method::kalman_fast: {
      const NoiseSpec noise = NoiseSpec::iid(residual_variance(data.y - data.X * current.theta()));
      next = settings_.method == Method::kalman ? kalman_step(current, data, trans, noise, 1.0)
                                                : kalman_step_fast(current, data, trans, noise);
      break;
    }
    case Method::lasso_local: {
      Vector theta = local_adaptive_lasso(data, settings_.hp.lambda(), settings_.descent);
      const double w2 = residual_variance(data.y - data.X * theta);
      next.emplace(std::move(theta), Matrix::Identity(p, p), w2, current.t() + 1);
      break;
    }
  }
  state_ = std::move(next);
  scaler_ = std::move(scaler);
  last_iterations_ = iterations;
}

Vector SequentialModel::predict(const Matrix& X) const {
  return scaler_.predict(X, state().theta());
}

}  // namespace irs
