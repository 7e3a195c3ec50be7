#include "irs/linalg.hpp"

#include "irs/error.hpp"

#include <string>

namespace irs {

Matrix symmetrize(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

bool pivots_acceptable(const Eigen::LLT<Matrix>& llt, const Matrix& m) {
  if (llt.info() != Eigen::Success) return false;
  const Matrix& l = llt.matrixLLT();
  for (Index i = 0; i < m.rows(); ++i) {
    const double pivot2 = l(i, i) * l(i, i);
    if (!(m(i, i) > 0.0) || !(pivot2 >= SpdFactor::kPivotFloor * m(i, i))) {
      return false;
    }
  }
  return true;
}

}  // namespace

SpdFactor::SpdFactor(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw DataError(std::string(what) + ": matrix is not square");
  }
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + " singular (non-finite entries)");
  }
  llt_.compute(m);
  if (pivots_acceptable(llt_, m)) return;

  Matrix jittered = m;
  jittered.diagonal().array() += kJitter;
  llt_.compute(jittered);
  if (pivots_acceptable(llt_, jittered)) {
    jittered_ = true;
    return;
  }
  throw NumericalError(std::string(what) + " singular");
}

Matrix SpdFactor::inverse() const {
  return symmetrize(llt_.solve(Matrix::Identity(dim(), dim())));
}

Matrix inverse_sqrt_spd(const Matrix& m, std::string_view what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  if (es.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + ": eigendecomposition failed");
  }
  const Vector& ev = es.eigenvalues();
  if (ev.size() > 0 && !(ev.minCoeff() > 0.0)) {
    throw NumericalError(std::string(what) + " is not positive definite");
  }
  const Vector inv_root = ev.cwiseSqrt().cwiseInverse();
  return symmetrize(es.eigenvectors() * inv_root.asDiagonal() *
                    es.eigenvectors().transpose());
}

}  // namespace irs
