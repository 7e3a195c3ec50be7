#pragma once

// Domain types shared by every estimator: epochs of data, state transitions,
// response-noise specifications, model states and per-epoch scaling.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace irs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Absolute tolerance used for every symmetry check on covariance-like matrices.
inline constexpr double kSymmetryTol = 1e-10;

/// One epoch of observations: n rows of predictors X and responses y.
///
/// EpochData is a plain carrier; it may hold malformed input. Use
/// validate_epoch() before handing it to an estimator.
struct EpochData {
  Matrix X;
  Vector y;
  std::size_t t = 0;

  Index rows() const { return X.rows(); }
  Index cols() const { return X.cols(); }
};

/// Evolution of the parameter vector between epochs: theta_t = F theta_{t-1} + nu, nu ~ N(0, Q).
class StateTransition {
 public:
  /// Throws DataError unless F and Q are square with matching size and Q is
  /// symmetric within kSymmetryTol. Q is stored symmetrized.
  StateTransition(Matrix F, Matrix Q);

  /// F = I, Q = q_sd^2 I.
  static StateTransition identity(Index p, double q_sd = 0.01);

  const Matrix& F() const { return F_; }
  const Matrix& Q() const { return Q_; }
  Index dim() const { return F_.rows(); }

 private:
  Matrix F_;
  Matrix Q_;
};

/// Response noise covariance W for one epoch, either w^2 I or a full matrix.
class NoiseSpec {
 public:
  static NoiseSpec iid(double w2);
  static NoiseSpec full(Matrix W);

  bool is_iid() const { return iid_; }
  /// The iid variance; for a full W this is the mean of its diagonal.
  double w2() const { return w2_; }
  /// Materialized W (n x n). Only valid for full mode.
  const Matrix& W() const { return W_; }
  /// Dense W for an epoch with n rows, in either mode.
  Matrix dense(Index n) const;

  /// X^T W^{-1} X
  Matrix gram(const Matrix& X) const;
  /// X^T W^{-1} r
  Vector cross(const Matrix& X, const Vector& r) const;
  /// r^T W^{-1} r
  double quad(const Vector& r) const;
  /// W^{-1/2} M using the symmetric inverse square root.
  Matrix whiten(const Matrix& M) const;

  /// Throws DataError if a full W does not have n rows.
  void check_rows(Index n) const;

 private:
  NoiseSpec() = default;

  bool iid_ = true;
  double w2_ = 1.0;
  Matrix W_;
  Eigen::LLT<Matrix> llt_;
  Matrix inv_sqrt_;
};

/// Parameter estimate and covariance after an epoch, plus the noise-scale estimate.
class ModelState {
 public:
  ModelState(Vector theta, Matrix sigma, double w2, std::size_t t);

  const Vector& theta() const { return theta_; }
  const Matrix& sigma() const { return sigma_; }
  double w2() const { return w2_; }
  std::size_t t() const { return t_; }
  Index dim() const { return theta_.size(); }

 private:
  Vector theta_;
  Matrix sigma_;
  double w2_;
  std::size_t t_;
};

/// theta_{t|t-1} and Sigma_{t|t-1}.
class PredictedState {
 public:
  PredictedState(Vector theta_pred, Matrix sigma_pred);

  const Vector& theta() const { return theta_; }
  const Matrix& sigma() const { return sigma_; }
  Index dim() const { return theta_.size(); }

 private:
  Vector theta_;
  Matrix sigma_;
};

/// Regularization pair (lambda, tau).
class Hyperparams {
 public:
  Hyperparams(double lambda, double tau);

  double lambda() const { return lambda_; }
  double tau() const { return tau_; }
  /// tau* = tau n / p
  double tau_star(Index n, Index p) const {
    return tau_ * static_cast<double>(n) / static_cast<double>(p);
  }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;

 private:
  double lambda_;
  double tau_;
};

/// Column statistics recorded by standardize(), used to map new rows into
/// the same coordinates and predictions back to the response scale.
struct Scaler {
  Vector col_means;
  Vector col_stds;
  double y_mean = 0.0;
  /// true where the column had (numerically) zero variance.
  std::vector<bool> zero_variance;

  Matrix transform(const Matrix& X) const;
  /// y_mean + transform(X) theta
  Vector predict(const Matrix& X, const Vector& theta) const;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Dimension and finiteness checks. expected_p < 0 skips the column-count check.
ValidationReport validate_epoch(const EpochData& data, Index expected_p = -1);

/// Per-epoch standardization: columns to mean 0 / sample variance 1, y centered.
/// Constant columns become all-zero and are flagged in the Scaler.
/// Throws DataError when n < 2.
std::pair<EpochData, Scaler> standardize(const EpochData& data);

/// X theta. Throws DataError on a dimension mismatch.
Vector predict_response(const Vector& theta, const Matrix& X);

}  // namespace irs
