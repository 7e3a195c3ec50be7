#include "oracles.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>

namespace oracle {

Matrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = n01(rng);
  }
  return m;
}

Vector gaussian(Index n, Rng& rng) {
  std::normal_distribution<double> n01;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = n01(rng);
  return v;
}

Matrix spd(Index p, Rng& rng, double lo, double hi) {
  const Matrix q = orthonormal_columns(p, p, rng);
  Vector eig(p);
  for (Index i = 0; i < p; ++i) eig(i) = uniform(lo, hi, rng);
  Matrix m = q * eig.asDiagonal() * q.transpose();
  return (m + m.transpose()) / 2.0;
}

Matrix orthonormal_columns(Index n, Index p, Rng& rng) {
  const Matrix g = gaussian(n, p, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, p);
}

int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix lu_inverse(const Matrix& m) { return Eigen::FullPivLU<Matrix>(m).inverse(); }

double smooth_loss(const Vector& theta, const Matrix& X, const Vector& y, const Matrix& W,
                   const Vector& theta_pred, const Matrix& sigma_pred, double tau) {
  const double n = static_cast<double>(X.rows());
  const double p = static_cast<double>(X.cols());
  const Vector r = y - X * theta;
  const Vector d = theta - theta_pred;
  double value = r.dot(Eigen::FullPivLU<Matrix>(W).solve(r)) / (2.0 * n);
  if (tau > 0.0) value += tau / (2.0 * p) * d.dot(Eigen::FullPivLU<Matrix>(sigma_pred).solve(d));
  return value;
}

Vector normal_equations(const Matrix& X, const Vector& y, const Matrix& W,
                        const Vector& theta_pred, const Matrix& sigma_pred, double tau) {
  const double tau_star = tau * static_cast<double>(X.rows()) / static_cast<double>(X.cols());
  const Matrix Winv = lu_inverse(W);
  Matrix lhs = X.transpose() * Winv * X;
  Vector rhs = X.transpose() * Winv * y;
  if (tau > 0.0) {
    const Matrix Sinv = lu_inverse(sigma_pred);
    lhs += tau_star * Sinv;
    rhs += tau_star * Sinv * theta_pred;
  }
  return Eigen::FullPivLU<Matrix>(lhs).solve(rhs);
}

Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x, double h) {
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Vector up = x, dn = x;
    up(i) += h;
    dn(i) -= h;
    g(i) = (f(up) - f(dn)) / (2.0 * h);
  }
  return g;
}

Vector coordinate_descent_lasso(const Matrix& Xt, const Vector& yt, const Vector& weights,
                                double tol, int max_sweeps) {
  const Index p = Xt.cols();
  Vector theta = Vector::Zero(p);
  Vector r = yt;
  const Vector col_sq = Xt.colwise().squaredNorm().transpose();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double biggest = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (col_sq(j) == 0.0) continue;
      const double old = theta(j);
      const double rho = Xt.col(j).dot(r) + col_sq(j) * old;
      const double half_w = weights(j) / 2.0;
      double next = 0.0;
      if (std::isinf(half_w)) {
        next = 0.0;
      } else if (rho > half_w) {
        next = (rho - half_w) / col_sq(j);
      } else if (rho < -half_w) {
        next = (rho + half_w) / col_sq(j);
      }
      if (next != old) {
        r -= Xt.col(j) * (next - old);
        theta(j) = next;
        biggest = std::max(biggest, std::abs(next - old));
      }
    }
    if (biggest < tol) break;
  }
  return theta;
}

double golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

Matrix kalman_gain(const Matrix& sigma_pred, const Matrix& X, const Matrix& W, double tau_star) {
  const Matrix S = W + X * sigma_pred * X.transpose() / tau_star;
  return sigma_pred * X.transpose() * lu_inverse(S);
}

Matrix kalman_covariance(const Matrix& sigma_pred, const Matrix& X, const Matrix& W) {
  const Matrix K = kalman_gain(sigma_pred, X, W, 1.0);
  const Index p = sigma_pred.rows();
  return (Matrix::Identity(p, p) - K * X) * sigma_pred;
}

double relative_frobenius(const Matrix& a, const Matrix& b) {
  const double denom = std::max(b.norm(), 1e-300);
  return (a - b).norm() / denom;
}

}  // namespace oracle
