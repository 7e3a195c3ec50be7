#include "irs/baselines.hpp"
#include "irs/error.hpp"

#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>

using namespace irs;

TEST(KalmanGain, Examples) {
  const PredictedState pred(Vector::Zero(2), Matrix::Identity(2, 2));
  const Matrix K = kalman_gain(pred, Matrix::Identity(2, 2), NoiseSpec::iid(1.0), 1.0);
  EXPECT_TRUE(K.isApprox(0.5 * Matrix::Identity(2, 2)));
  const PredictedState flat(Vector::Zero(2), Matrix::Zero(2, 2));
  EXPECT_TRUE(kalman_gain(flat, Matrix::Identity(2, 2), NoiseSpec::iid(1.0), 1.0).isZero(0.0));
}

TEST(KalmanGain, DefiningEquation) {
  oracle::Rng rng(30);
  const Matrix X = oracle::gaussian(6, 3, rng);
  const Matrix S = oracle::spd(3, rng);
  const Matrix W = oracle::spd(6, rng);
  const double ts = 0.6;
  const Matrix K = kalman_gain(PredictedState(Vector::Zero(3), S), X, NoiseSpec::full(W), ts);
  EXPECT_LT((K * (W + X * S * X.transpose() / ts) - S * X.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((K - oracle::kalman_gain(S, X, W, ts)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(KalmanStep, ZeroInnovationAndNoMeasurement) {
  oracle::Rng rng(31);
  const Index p = 3;
  const ModelState prev(oracle::gaussian(p, rng), oracle::spd(p, rng), 1.0, 0);
  const auto trans = StateTransition::identity(p, 0.1);
  const Matrix X = oracle::gaussian(8, p, rng);
  const ModelState a = kalman_step(prev, EpochData{X, X * prev.theta(), 1}, trans, NoiseSpec::iid(1.0));
  EXPECT_LT((a.theta() - prev.theta()).cwiseAbs().maxCoeff(), 1e-12);

  const EpochData blank{Matrix::Zero(8, p), oracle::gaussian(8, rng), 1};
  const Matrix sigma_pred = prev.sigma() + 0.01 * Matrix::Identity(p, p);
  for (const ModelState& b : {kalman_step(prev, blank, trans, NoiseSpec::iid(1.0)),
                              kalman_step_fast(prev, blank, trans, NoiseSpec::iid(1.0))}) {
    EXPECT_LT((b.theta() - prev.theta()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(oracle::relative_frobenius(b.sigma(), sigma_pred), 1e-10);
  }
}

TEST(KalmanStep, GainAndInformationFormsAgree) {
  oracle::Rng rng(32);
  for (Index n : {50, 500}) {
    for (Index p : {5, 20}) {
      const ModelState prev(oracle::gaussian(p, rng), oracle::spd(p, rng), 1.0, 0);
      const auto trans = StateTransition::identity(p, 0.2);
      const EpochData d{oracle::gaussian(n, p, rng), oracle::gaussian(n, rng), 1};
      const auto noise = NoiseSpec::iid(oracle::uniform(0.5, 2.0, rng));
      const ModelState a = kalman_step(prev, d, trans, noise);
      const ModelState b = kalman_step_fast(prev, d, trans, noise);
      EXPECT_LT((a.theta() - b.theta()).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT(oracle::relative_frobenius(a.sigma(), b.sigma()), 1e-8);

      // information never decreases
      const Matrix gap = prev.sigma() + trans.Q() - a.sigma();
      Eigen::SelfAdjointEigenSolver<Matrix> es(gap);
      EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(KalmanStep, WeightedThetaUpdate) {
  oracle::Rng rng(33);
  const Index n = 10, p = 3;
  const ModelState prev(oracle::gaussian(p, rng), oracle::spd(p, rng), 1.0, 0);
  const auto trans = StateTransition::identity(p, 0.0);
  const EpochData d{oracle::gaussian(n, p, rng), oracle::gaussian(n, rng), 1};
  const double ts = 2.5;
  const ModelState s = kalman_step(prev, d, trans, NoiseSpec::iid(1.0), ts);
  const Matrix K = oracle::kalman_gain(prev.sigma(), d.X, Matrix::Identity(n, n), ts);
  const Vector ref = prev.theta() + K * (d.y - d.X * prev.theta()) / ts;
  EXPECT_LT((s.theta() - ref).cwiseAbs().maxCoeff(), 1e-10);
  // theta also solves the inertial normal equations with tau* = ts
  const double tau = ts * p / static_cast<double>(n);
  EXPECT_LT((s.theta() - oracle::normal_equations(d.X, d.y, Matrix::Identity(n, n), prev.theta(), prev.sigma(), tau))
                .cwiseAbs()
                .maxCoeff(),
            1e-9);
}

TEST(LocalAdaptiveLasso, Examples) {
  oracle::Rng rng(34);
  const Vector y = oracle::gaussian(4, rng);
  EXPECT_LT((local_adaptive_lasso(EpochData{Matrix::Identity(4, 4), y, 1}, 0.0) - y).cwiseAbs().maxCoeff(), 1e-10);
  const EpochData d{oracle::gaussian(30, 5, rng), oracle::gaussian(30, rng), 1};
  EXPECT_TRUE(local_adaptive_lasso(d, 1e8).isZero(0.0));
}

TEST(LocalAdaptiveLasso, OrthonormalSoftThreshold) {
  oracle::Rng rng(35);
  const Index n = 15, p = 6;
  const EpochData d{oracle::orthonormal_columns(n, p, rng), 3.0 * oracle::gaussian(n, rng), 1};
  const double lambda = 0.2;
  DescentConfig cfg;
  cfg.tol = 1e-20;
  cfg.max_iters = 10000;
  const Vector th = local_adaptive_lasso(d, lambda, cfg);
  const Vector ols = d.X.transpose() * d.y;
  for (Index i = 0; i < p; ++i) {
    // (1/2n)(t^2 - 2 t z) + (lambda/p)|t|/|z|  =>  t = S(z, lambda n / (p |z|))
    const double nu = lambda * n / (p * std::abs(ols(i)));
    const double ref = std::copysign(std::max(std::abs(ols(i)) - nu, 0.0), ols(i));
    EXPECT_NEAR(th(i), ref, 1e-8);
  }
}

TEST(LocalAdaptiveLasso, SingularAnchorUsesRidge) {
  oracle::Rng rng(36);
  EpochData d{oracle::gaussian(10, 4, rng), oracle::gaussian(10, rng), 1};
  d.X.col(3) = d.X.col(2);
  const Vector th = local_adaptive_lasso(d, 0.1);
  EXPECT_TRUE(th.allFinite());
}
