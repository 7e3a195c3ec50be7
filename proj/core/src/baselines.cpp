#include "irs/baselines.hpp"

#include "irs/error.hpp"
#include "irs/linalg.hpp"
#include "prox_engine.hpp"

#include <string>

namespace irs {

namespace {

void check_dims(const EpochData& data, Index p, const char* who) {
  if (data.X.rows() != data.y.size()) {
    throw DataError(std::string(who) + ": row/response mismatch");
  }
  if (data.X.cols() != p) {
    throw DataError(std::string(who) + ": X has " + std::to_string(data.X.cols()) +
                    " columns, expected " + std::to_string(p));
  }
}

}  // namespace

Matrix kalman_gain(const PredictedState& pred, const Matrix& X, const NoiseSpec& noise,
                   double tau_star) {
  if (X.cols() != pred.dim()) throw DataError("kalman_gain: dimension mismatch");
  if (!(tau_star > 0.0)) throw ConfigError("kalman_gain: tau* must be positive");
  const Matrix sx = pred.sigma() * X.transpose();  // p x n
  Matrix inner = noise.dense(X.rows()) + (X * sx) / tau_star;
  const SpdFactor factor(symmetrize(inner), "Kalman innovation covariance");
  // K' = S^-1 X Sigma
  return factor.solve(Matrix(sx.transpose())).transpose();
}

ModelState kalman_step(const ModelState& prev, const EpochData& data, const StateTransition& trans,
                       const NoiseSpec& noise, double tau_star) {
  check_dims(data, prev.dim(), "kalman_step");
  const PredictedState pred = predict_state(prev, trans);
  const Matrix gain = kalman_gain(pred, data.X, noise, tau_star);
  const Vector innovation = data.y - data.X * pred.theta();
  Vector theta = pred.theta() + gain * innovation / tau_star;

  Matrix sigma;
  if (tau_star == 1.0) {
    const Index p = prev.dim();
    sigma = symmetrize((Matrix::Identity(p, p) - gain * data.X) * pred.sigma());
  } else {
    const double tau = tau_star * static_cast<double>(data.X.cols()) /
                       static_cast<double>(data.X.rows());
    sigma = covariance_estimate(theta, theta, data, pred, noise, Hyperparams(0.0, tau));
  }
  return ModelState(std::move(theta), std::move(sigma), noise.w2(), prev.t() + 1);
}

ModelState kalman_step_fast(const ModelState& prev, const EpochData& data,
                            const StateTransition& trans, const NoiseSpec& noise) {
  check_dims(data, prev.dim(), "kalman_step_fast");
  const PredictedState pred = predict_state(prev, trans);
  const Matrix prior_precision = SpdFactor(pred.sigma(), "predicted covariance").inverse();
  const Matrix info = symmetrize(noise.gram(data.X) + prior_precision);
  const SpdFactor factor(info, "Kalman information matrix");
  Vector theta =
      factor.solve(Vector(noise.cross(data.X, data.y) + prior_precision * pred.theta()));
  return ModelState(std::move(theta), factor.inverse(), noise.w2(), prev.t() + 1);
}

Vector local_adaptive_lasso(const EpochData& data, double lambda, const DescentConfig& cfg) {
  cfg.validate();
  const Index n = data.X.rows();
  const Index p = data.X.cols();
  check_dims(data, p, "local_adaptive_lasso");
  if (n < 2) throw DataError("local_adaptive_lasso: at least two rows are required");
  if (!(lambda >= 0.0)) throw ConfigError("local_adaptive_lasso: lambda must be non-negative");

  const Matrix gram = symmetrize(data.X.transpose() * data.X);
  const Vector xty = data.X.transpose() * data.y;
  Vector anchor;
  try {
    anchor = SpdFactor(gram, "local OLS").solve(xty);
  } catch (const NumericalError&) {
    Matrix ridged = gram;
    ridged.diagonal().array() += kLocalAnchorRidge;
    anchor = SpdFactor(ridged, "ridge-stabilized local OLS").solve(xty);
  }

  const double nn = static_cast<double>(n);
  detail::WeightedL1Problem problem;
  problem.H = gram / nn;
  problem.b = xty / nn;
  problem.c = data.y.squaredNorm() / (2.0 * nn);
  detail::set_adaptive_weights(problem, anchor, lambda, cfg.adapt_floor);
  return detail::run_proximal_gradient(problem, anchor, cfg).theta;
}

}  // namespace irs
