#include "irs/model.hpp"

#include "irs/error.hpp"
#include "irs/linalg.hpp"

#include <cmath>
#include <sstream>

namespace irs {

// --- StateTransition -------------------------------------------------------

StateTransition::StateTransition(Matrix F, Matrix Q) {
  if (F.rows() != F.cols() || Q.rows() != Q.cols() || F.rows() != Q.rows()) {
    throw DataError("state transition: F and Q must be square with matching size");
  }
  if (!is_symmetric(Q)) {
    throw DataError("state transition: Q is not symmetric");
  }
  F_ = std::move(F);
  Q_ = symmetrize(Q);
}

StateTransition StateTransition::identity(Index p, double q_sd) {
  return StateTransition(Matrix::Identity(p, p), (q_sd * q_sd) * Matrix::Identity(p, p));
}

// --- NoiseSpec -------------------------------------------------------------

NoiseSpec NoiseSpec::iid(double w2) {
  if (!(w2 > 0.0) || !std::isfinite(w2)) {
    throw DataError("noise spec: w2 must be positive and finite");
  }
  NoiseSpec spec;
  spec.iid_ = true;
  spec.w2_ = w2;
  return spec;
}

NoiseSpec NoiseSpec::full(Matrix W) {
  if (W.rows() != W.cols() || W.rows() == 0) {
    throw DataError("noise spec: W must be a non-empty square matrix");
  }
  if (!is_symmetric(W)) {
    throw DataError("noise spec: W is not symmetric");
  }
  NoiseSpec spec;
  spec.iid_ = false;
  spec.W_ = symmetrize(W);
  spec.w2_ = spec.W_.diagonal().mean();
  spec.llt_.compute(spec.W_);
  if (spec.llt_.info() != Eigen::Success) {
    throw NumericalError("noise spec: W is not positive definite");
  }
  spec.inv_sqrt_ = inverse_sqrt_spd(spec.W_, "noise covariance W");
  return spec;
}

void NoiseSpec::check_rows(Index n) const {
  if (!iid_ && W_.rows() != n) {
    std::ostringstream os;
    os << "noise spec: W has " << W_.rows() << " rows but the epoch has " << n;
    throw DataError(os.str());
  }
}

Matrix NoiseSpec::dense(Index n) const {
  if (iid_) return w2_ * Matrix::Identity(n, n);
  check_rows(n);
  return W_;
}

Matrix NoiseSpec::gram(const Matrix& X) const {
  check_rows(X.rows());
  if (iid_) return symmetrize(X.transpose() * X) / w2_;
  return symmetrize(X.transpose() * llt_.solve(X));
}

Vector NoiseSpec::cross(const Matrix& X, const Vector& r) const {
  check_rows(X.rows());
  if (iid_) return X.transpose() * r / w2_;
  return X.transpose() * llt_.solve(r);
}

double NoiseSpec::quad(const Vector& r) const {
  check_rows(r.size());
  if (iid_) return r.squaredNorm() / w2_;
  return r.dot(llt_.solve(r));
}

Matrix NoiseSpec::whiten(const Matrix& M) const {
  check_rows(M.rows());
  if (iid_) return M / std::sqrt(w2_);
  return inv_sqrt_ * M;
}

// --- ModelState / PredictedState / Hyperparams ------------------------------

ModelState::ModelState(Vector theta, Matrix sigma, double w2, std::size_t t)
    : w2_(w2), t_(t) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != theta.size()) {
    throw DataError("model state: theta length must equal sigma dimension");
  }
  if (!is_symmetric(sigma)) {
    throw DataError("model state: sigma is not symmetric");
  }
  if (!(w2 > 0.0)) {
    throw DataError("model state: w2 must be positive");
  }
  theta_ = std::move(theta);
  sigma_ = symmetrize(sigma);
  if (sigma_.size() > 0 && sigma_.diagonal().minCoeff() < -kSymmetryTol) {
    throw DataError("model state: sigma has a negative diagonal entry");
  }
  for (Index i = 0; i < sigma_.rows(); ++i) {
    sigma_(i, i) = std::max(sigma_(i, i), 0.0);
  }
}

PredictedState::PredictedState(Vector theta_pred, Matrix sigma_pred) {
  if (sigma_pred.rows() != sigma_pred.cols() || sigma_pred.rows() != theta_pred.size()) {
    throw DataError("predicted state: dimension mismatch");
  }
  if (!is_symmetric(sigma_pred)) {
    throw DataError("predicted state: sigma is not symmetric");
  }
  theta_ = std::move(theta_pred);
  sigma_ = symmetrize(sigma_pred);
  if (sigma_.size() > 0 && sigma_.diagonal().minCoeff() < -kSymmetryTol) {
    throw DataError("predicted state: sigma has a negative diagonal entry");
  }
}

Hyperparams::Hyperparams(double lambda, double tau) : lambda_(lambda), tau_(tau) {
  if (!(lambda >= 0.0) || !(tau >= 0.0) || !std::isfinite(lambda) || !std::isfinite(tau)) {
    throw ConfigError("hyperparameters: lambda and tau must be finite and non-negative");
  }
}

// --- Scaler ----------------------------------------------------------------

Matrix Scaler::transform(const Matrix& X) const {
  if (X.cols() != col_means.size()) {
    throw DataError("scaler: column count mismatch");
  }
  Matrix out = X.rowwise() - col_means.transpose();
  for (Index j = 0; j < out.cols(); ++j) {
    if (zero_variance[static_cast<std::size_t>(j)]) {
      out.col(j).setZero();
    } else {
      out.col(j) /= col_stds(j);
    }
  }
  return out;
}

Vector Scaler::predict(const Matrix& X, const Vector& theta) const {
  return (transform(X) * theta).array() + y_mean;
}

// --- operations ------------------------------------------------------------

ValidationReport validate_epoch(const EpochData& data, Index expected_p) {
  ValidationReport report;
  const Index n = data.X.rows();
  const Index p = data.X.cols();
  if (n < 1) report.issues.push_back("no rows");
  if (p < 1) report.issues.push_back("no columns");
  if (data.y.size() != n) {
    std::ostringstream os;
    os << "row/response mismatch: X has " << n << " rows, y has " << data.y.size();
    report.issues.push_back(os.str());
  }
  if (expected_p >= 0 && p != expected_p) {
    std::ostringstream os;
    os << "column count " << p << " differs from expected " << expected_p;
    report.issues.push_back(os.str());
  }
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (!std::isfinite(data.X(i, j))) {
        std::ostringstream os;
        os << "non-finite entry at (" << i << "," << j << ")";
        report.issues.push_back(os.str());
      }
    }
  }
  for (Index i = 0; i < data.y.size(); ++i) {
    if (!std::isfinite(data.y(i))) {
      std::ostringstream os;
      os << "non-finite response at " << i;
      report.issues.push_back(os.str());
    }
  }
  return report;
}

std::pair<EpochData, Scaler> standardize(const EpochData& data) {
  const Index n = data.X.rows();
  const Index p = data.X.cols();
  if (n < 2) {
    throw DataError("insufficient rows to standardize");
  }
  if (data.y.size() != n) {
    throw DataError("standardize: row/response mismatch");
  }

  Scaler scaler;
  scaler.col_means = data.X.colwise().mean().transpose();
  scaler.col_stds.resize(p);
  scaler.zero_variance.assign(static_cast<std::size_t>(p), false);
  for (Index j = 0; j < p; ++j) {
    const double var =
        (data.X.col(j).array() - scaler.col_means(j)).square().sum() / static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    scaler.col_stds(j) = sd;
    if (!(sd > 1e-12 * std::max(1.0, std::abs(scaler.col_means(j))))) {
      scaler.zero_variance[static_cast<std::size_t>(j)] = true;
    }
  }
  scaler.y_mean = data.y.mean();

  EpochData out;
  out.X = scaler.transform(data.X);
  out.y = data.y.array() - scaler.y_mean;
  out.t = data.t;
  return {std::move(out), std::move(scaler)};
}

Vector predict_response(const Vector& theta, const Matrix& X) {
  if (X.cols() != theta.size()) {
    throw DataError("predict_response: X has " + std::to_string(X.cols()) +
                    " columns but theta has length " + std::to_string(theta.size()));
  }
  return X * theta;
}

}  // namespace irs
