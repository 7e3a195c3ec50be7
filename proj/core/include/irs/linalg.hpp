#pragma once

#include "irs/model.hpp"

#include <string_view>

namespace irs {

/// (M + M^T) / 2
Matrix symmetrize(const Matrix& m);

bool is_symmetric(const Matrix& m, double tol = kSymmetryTol);

/// Cholesky factorization of a symmetric positive-definite matrix.
///
/// A factorization is accepted when every squared pivot keeps at least
/// kPivotFloor of its diagonal entry. On rejection the matrix is retried once
/// with kJitter added to the diagonal; a second rejection throws
/// NumericalError("<what> singular").
class SpdFactor {
 public:
  static constexpr double kPivotFloor = 1e-10;
  static constexpr double kJitter = 1e-10;

  SpdFactor(const Matrix& m, std::string_view what);

  Index dim() const { return llt_.rows(); }
  bool jittered() const { return jittered_; }

  Vector solve(const Vector& b) const { return llt_.solve(b); }
  Matrix solve(const Matrix& b) const { return llt_.solve(b); }
  /// Symmetrized inverse.
  Matrix inverse() const;

 private:
  Eigen::LLT<Matrix> llt_;
  bool jittered_ = false;
};

/// Symmetric inverse square root via eigendecomposition.
/// Throws NumericalError if any eigenvalue is not strictly positive.
Matrix inverse_sqrt_spd(const Matrix& m, std::string_view what);

}  // namespace irs
