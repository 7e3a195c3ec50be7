#include "irs/estimator.hpp"

#include "irs/error.hpp"
#include "irs/linalg.hpp"
#include "prox_engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace irs {

void DescentConfig::validate() const {
  if (max_iters < 1) throw ConfigError("descent: max_iters must be >= 1");
  if (!(step0 > 0.0)) throw ConfigError("descent: step0 must be positive");
  if (!(tol > 0.0)) throw ConfigError("descent: tol must be positive");
  if (!(adapt_floor > 0.0)) throw ConfigError("descent: adapt_floor must be positive");
  if (!(step_growth >= 1.0)) throw ConfigError("descent: step_growth must be >= 1");
  if (max_halvings < 0) throw ConfigError("descent: max_halvings must be >= 0");
}

namespace {

void check_epoch(const EpochData& data, Index p, const char* who) {
  if (data.X.rows() != data.y.size()) {
    throw DataError(std::string(who) + ": row/response mismatch");
  }
  if (data.X.rows() < 1) {
    throw DataError(std::string(who) + ": epoch has no rows");
  }
  if (data.X.cols() != p) {
    throw DataError(std::string(who) + ": X has " + std::to_string(data.X.cols()) +
                    " columns but the state has dimension " + std::to_string(p));
  }
}

void check_theta(const Vector& theta, Index p, const char* who) {
  if (theta.size() != p) {
    throw DataError(std::string(who) + ": parameter vector has the wrong length");
  }
}

// Everything one epoch's smooth loss needs, computed once.
struct EpochTerms {
  double n = 0.0;
  double p = 0.0;
  double tau = 0.0;
  double tau_star = 0.0;
  Matrix gram;                 // X'W^-1X
  Vector cross;                // X'W^-1y
  double yy = 0.0;             // y'W^-1y
  std::optional<Matrix> sigma_inv;  // only when tau > 0

  EpochTerms(const EpochData& data, const PredictedState& pred, const NoiseSpec& noise,
             double tau_in, bool need_sigma_inv)
      : n(static_cast<double>(data.X.rows())),
        p(static_cast<double>(data.X.cols())),
        tau(tau_in),
        tau_star(tau_in * n / p),
        gram(noise.gram(data.X)),
        cross(noise.cross(data.X, data.y)),
        yy(noise.quad(data.y)) {
    if (tau_in < 0.0) throw ConfigError("tau must be non-negative");
    if (need_sigma_inv || tau > 0.0) {
      sigma_inv = SpdFactor(pred.sigma(), "predicted covariance").inverse();
    }
  }

  // n f(th) written as 0.5 th'M th - r'th + const, M = X'W^-1X + tau* Sigma^-1.
  Matrix normal_matrix() const {
    Matrix m = gram;
    if (tau > 0.0) m += tau_star * (*sigma_inv);
    return symmetrize(m);
  }

  Vector normal_rhs(const Vector& theta_pred) const {
    Vector r = cross;
    if (tau > 0.0) r += tau_star * ((*sigma_inv) * theta_pred);
    return r;
  }

  detail::WeightedL1Problem smooth_problem(const Vector& theta_pred) const {
    detail::WeightedL1Problem problem;
    problem.H = normal_matrix() / n;
    problem.b = normal_rhs(theta_pred) / n;
    problem.c = yy / (2.0 * n);
    if (tau > 0.0) {
      problem.c += tau / (2.0 * p) * theta_pred.dot((*sigma_inv) * theta_pred);
    }
    return problem;
  }
};

Vector solve_inertial_ols(const EpochTerms& terms, const Vector& theta_pred) {
  const SpdFactor factor(terms.normal_matrix(), "inertial OLS");
  return factor.solve(terms.normal_rhs(theta_pred));
}

}  // namespace

PredictedState predict_state(const ModelState& prev, const StateTransition& trans) {
  if (trans.dim() != prev.dim()) {
    throw DataError("predict_state: transition dimension " + std::to_string(trans.dim()) +
                    " does not match state dimension " + std::to_string(prev.dim()));
  }
  const Matrix& F = trans.F();
  return PredictedState(F * prev.theta(),
                        symmetrize(F * prev.sigma() * F.transpose() + trans.Q()));
}

Vector inertial_ols(const EpochData& data, const PredictedState& pred, const NoiseSpec& noise,
                    double tau) {
  check_epoch(data, pred.dim(), "inertial_ols");
  const EpochTerms terms(data, pred, noise, tau, false);
  return solve_inertial_ols(terms, pred.theta());
}

double soft_threshold(double x, double nu) {
  if (x > nu) return x - nu;
  if (x < -nu) return x + nu;
  return 0.0;
}

Vector loss_gradient(const Vector& theta, const EpochData& data, const PredictedState& pred,
                     const NoiseSpec& noise, double tau) {
  check_epoch(data, pred.dim(), "loss_gradient");
  check_theta(theta, pred.dim(), "loss_gradient");
  const double n = static_cast<double>(data.X.rows());
  const double p = static_cast<double>(data.X.cols());
  const Vector residual = data.y - data.X * theta;
  Vector grad = -noise.cross(data.X, residual) / n;
  if (tau > 0.0) {
    const SpdFactor sigma(pred.sigma(), "predicted covariance");
    grad += (tau / p) * sigma.solve(Vector(theta - pred.theta()));
  }
  return grad;
}

LossParts loss_parts(const Vector& theta, const EpochData& data, const PredictedState& pred,
                     const NoiseSpec& noise, const Hyperparams& hp, const Vector& theta_star,
                     double adapt_floor) {
  check_epoch(data, pred.dim(), "objective");
  check_theta(theta, pred.dim(), "objective");
  check_theta(theta_star, pred.dim(), "objective");
  const double n = static_cast<double>(data.X.rows());
  const double p = static_cast<double>(data.X.cols());

  LossParts parts;
  parts.residual = noise.quad(data.y - data.X * theta) / (2.0 * n);
  if (hp.tau() > 0.0) {
    const SpdFactor sigma(pred.sigma(), "predicted covariance");
    const Vector d = theta - pred.theta();
    parts.inertia = hp.tau() / (2.0 * p) * d.dot(sigma.solve(d));
  }
  if (hp.lambda() > 0.0) {
    double sum = 0.0;
    for (Index i = 0; i < theta.size(); ++i) {
      sum += std::abs(theta(i)) / std::max(std::abs(theta_star(i)), adapt_floor);
    }
    parts.selection = hp.lambda() / p * sum;
  }
  return parts;
}

double objective(const Vector& theta, const EpochData& data, const PredictedState& pred,
                 const NoiseSpec& noise, const Hyperparams& hp, const Vector& theta_star,
                 double adapt_floor) {
  return loss_parts(theta, data, pred, noise, hp, theta_star, adapt_floor).total();
}

AugmentedData augment_data(const EpochData& data, const PredictedState& pred,
                           const NoiseSpec& noise, double tau) {
  check_epoch(data, pred.dim(), "augment_data");
  if (tau < 0.0) throw ConfigError("tau must be non-negative");
  const Index n = data.X.rows();
  const Index p = data.X.cols();
  const double top_scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));

  AugmentedData out;
  out.X_tilde = Matrix::Zero(n + p, p);
  out.y_tilde = Vector::Zero(n + p);
  out.X_tilde.topRows(n) = top_scale * noise.whiten(data.X);
  out.y_tilde.head(n) = top_scale * noise.whiten(data.y);
  if (tau > 0.0) {
    const double low_scale = std::sqrt(tau / (2.0 * static_cast<double>(p)));
    const Matrix root = inverse_sqrt_spd(pred.sigma(), "predicted covariance");
    out.X_tilde.bottomRows(p) = low_scale * root;
    out.y_tilde.tail(p) = low_scale * (root * pred.theta());
  }
  return out;
}

DescentResult proximal_descent(const EpochData& data, const PredictedState& pred,
                               const NoiseSpec& noise, const Hyperparams& hp,
                               const DescentConfig& cfg) {
  cfg.validate();
  check_epoch(data, pred.dim(), "proximal_descent");
  const EpochTerms terms(data, pred, noise, hp.tau(), false);
  const Vector theta_star = solve_inertial_ols(terms, pred.theta());

  detail::WeightedL1Problem problem = terms.smooth_problem(pred.theta());
  detail::set_adaptive_weights(problem, theta_star, hp.lambda(), cfg.adapt_floor);

  DescentResult result = detail::run_proximal_gradient(problem, theta_star, cfg);
  result.theta_star = theta_star;
  return result;
}

Vector closed_form_orthogonal(const EpochData& data, const Vector& theta_pred, const Vector& rho,
                              double w2, const Hyperparams& hp, double adapt_floor) {
  const Index p = data.X.cols();
  check_epoch(data, p, "closed_form_orthogonal");
  check_theta(theta_pred, p, "closed_form_orthogonal");
  check_theta(rho, p, "closed_form_orthogonal");
  if (!(w2 > 0.0)) throw DataError("closed_form_orthogonal: w2 must be positive");
  const Matrix gram = data.X.transpose() * data.X;
  if ((gram - Matrix::Identity(p, p)).cwiseAbs().maxCoeff() > 1e-8) {
    throw DataError("orthogonality violated");
  }

  const double n = static_cast<double>(data.X.rows());
  const double tau_star = hp.tau_star(data.X.rows(), p);
  const double shrink = hp.lambda() * n / static_cast<double>(p);
  const Vector xty = data.X.transpose() * data.y;

  Vector theta(p);
  for (Index i = 0; i < p; ++i) {
    double precision = 1.0 / w2;
    double pulled = xty(i) / w2;
    if (hp.tau() > 0.0) {
      if (!(rho(i) > 0.0)) throw DataError("closed_form_orthogonal: rho must be positive");
      precision += tau_star / rho(i);
      pulled += tau_star * theta_pred(i) / rho(i);
    }
    const double rho_star = 1.0 / precision;
    const double anchor = rho_star * pulled;
    const double magnitude = std::abs(anchor);
    if (hp.lambda() > 0.0 && magnitude < adapt_floor) {
      theta(i) = 0.0;
      continue;
    }
    const double reduced = hp.lambda() > 0.0 ? magnitude - shrink * rho_star / magnitude : magnitude;
    theta(i) = reduced > 0.0 ? std::copysign(reduced, anchor) : 0.0;
  }
  return theta;
}

Matrix covariance_estimate(const Vector& theta_hat, const Vector& theta_star,
                           const EpochData& data, const PredictedState& pred,
                           const NoiseSpec& noise, const Hyperparams& hp, double adapt_floor) {
  const Index p = pred.dim();
  check_epoch(data, p, "covariance_estimate");
  check_theta(theta_hat, p, "covariance_estimate");
  check_theta(theta_star, p, "covariance_estimate");
  const EpochTerms terms(data, pred, noise, hp.tau(), false);

  Matrix a = terms.gram;
  Matrix b = terms.gram;
  if (hp.tau() > 0.0) {
    a += terms.tau_star * (*terms.sigma_inv);
    b += terms.tau_star * terms.tau_star * (*terms.sigma_inv);
  }
  if (hp.lambda() > 0.0) {
    for (Index i = 0; i < p; ++i) {
      const double anchor = std::max(std::abs(theta_star(i)), adapt_floor);
      const double d = theta_hat(i) != 0.0 ? std::abs(theta_hat(i)) * anchor : anchor * anchor;
      a(i, i) += hp.lambda() / d;
    }
  }
  const SpdFactor factor(symmetrize(a), "covariance system A");
  const Matrix left = factor.solve(b);  // A^-1 B
  Matrix sigma = symmetrize(factor.solve(Matrix(left.transpose())));
  for (Index i = 0; i < p; ++i) sigma(i, i) = std::max(sigma(i, i), 0.0);
  return sigma;
}

ModelState irs_step(const ModelState& prev, const EpochData& data, const StateTransition& trans,
                    const Hyperparams& hp, const DescentConfig& cfg,
                    StepDiagnostics* diagnostics) {
  if (data.X.cols() != prev.dim()) {
    throw DataError("irs_step: epoch has " + std::to_string(data.X.cols()) +
                    " predictors but the state has " + std::to_string(prev.dim()) +
                    " (expand the model first)");
  }
  check_epoch(data, prev.dim(), "irs_step");
  if (data.X.rows() < 2) throw DataError("irs_step: at least two rows are required");

  const PredictedState pred = predict_state(prev, trans);
  const Vector innovation = data.y - data.X * pred.theta();
  const double w2 = std::max(innovation.squaredNorm() / static_cast<double>(data.X.rows() - 1),
                             kMinResidualVariance);
  const NoiseSpec noise = NoiseSpec::iid(w2);

  DescentResult descent = proximal_descent(data, pred, noise, hp, cfg);
  Matrix sigma =
      covariance_estimate(descent.theta, descent.theta_star, data, pred, noise, hp, cfg.adapt_floor);

  if (diagnostics != nullptr) {
    diagnostics->iterations = descent.iterations;
    diagnostics->converged = descent.converged;
    diagnostics->w2 = w2;
    diagnostics->trace = descent.trace;
  }
  return ModelState(std::move(descent.theta), std::move(sigma), w2, prev.t() + 1);
}

ModelState expand_model(const ModelState& state, Index n_new, double prior_variance) {
  if (n_new < 1) throw ConfigError("expand_model: n_new must be at least 1");
  if (!(prior_variance > 0.0)) throw ConfigError("expand_model: prior_variance must be positive");
  const Index p = state.dim();
  Vector theta = Vector::Zero(p + n_new);
  theta.head(p) = state.theta();
  Matrix sigma = Matrix::Zero(p + n_new, p + n_new);
  sigma.topLeftCorner(p, p) = state.sigma();
  sigma.bottomRightCorner(n_new, n_new).diagonal().setConstant(prior_variance);
  return ModelState(std::move(theta), std::move(sigma), state.w2(), state.t());
}

}  // namespace irs
