// Randomized checks of invariants that should hold for every input.

#include "irs/checkpoint.hpp"
#include "irs/csv.hpp"
#include "irs/estimator.hpp"
#include "irs/experiment.hpp"
#include "irs/features.hpp"
#include "irs/tuning.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

using namespace irs;

TEST(Property, DescentTraceIsMonotone) {
  oracle::Rng rng(100);
  for (int rep = 0; rep < 30; ++rep) {
    const Index p = oracle::uniform_int(2, 25, rng);
    const Index n = oracle::uniform_int(static_cast<int>(p) / 2 + 2, 80, rng);
    EpochData d{oracle::gaussian(n, p, rng), oracle::gaussian(n, rng), 1};
    const PredictedState pred(oracle::gaussian(p, rng), oracle::spd(p, rng, 0.1, 5.0));
    const Hyperparams hp(oracle::uniform(0.0, 2.0, rng), oracle::uniform(0.05, 3.0, rng));
    DescentConfig cfg;
    cfg.step0 = oracle::uniform(0.01, 100.0, rng);
    const auto res = proximal_descent(d, pred, NoiseSpec::iid(oracle::uniform(0.2, 3.0, rng)), hp, cfg);
    for (std::size_t i = 1; i < res.trace.size(); ++i) ASSERT_LE(res.trace[i] - res.trace[i - 1], 1e-12);
  }
}

TEST(Property, SparsityIsSoftlyMonotoneInLambda) {
  oracle::Rng rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    const Index p = 20, n = 60;
    EpochData d{oracle::gaussian(n, p, rng), Vector(), 1};
    Vector truth = oracle::gaussian(p, rng);
    truth.tail(12).setZero();
    d.y = d.X * truth + oracle::gaussian(n, rng);
    const PredictedState pred(Vector::Zero(p), Matrix::Identity(p, p));
    Index previous = p;
    for (double lambda : {0.01, 0.05, 0.1, 0.5, 1.0, 5.0}) {
      const auto res = proximal_descent(d, pred, NoiseSpec::iid(1.0), Hyperparams(lambda, 0.5));
      const Index nz = (res.theta.array() != 0.0).count();
      ASSERT_LE(nz, previous + p / 10);
      previous = nz;
    }
  }
}

TEST(Property, AugmentedQuadraticMatchesSmoothLoss) {
  oracle::Rng rng(102);
  for (int rep = 0; rep < 20; ++rep) {
    const Index p = oracle::uniform_int(1, 8, rng);
    const Index n = oracle::uniform_int(1, 12, rng);
    EpochData d{oracle::gaussian(n, p, rng), oracle::gaussian(n, rng), 1};
    const PredictedState pred(oracle::gaussian(p, rng), oracle::spd(p, rng));
    const double tau = oracle::uniform(0.0, 2.0, rng);
    const double w2 = oracle::uniform(0.3, 3.0, rng);
    const auto aug = augment_data(d, pred, NoiseSpec::iid(w2), tau);
    const Vector th = oracle::gaussian(p, rng);
    const double lhs = (aug.y_tilde - aug.X_tilde * th).squaredNorm();
    const double rhs =
        oracle::smooth_loss(th, d.X, d.y, w2 * Matrix::Identity(n, n), pred.theta(), pred.sigma(), tau);
    ASSERT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, rhs));
  }
}

TEST(Property, KFoldPartitions) {
  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 50; ++rep) {
    const Index n = oracle::uniform_int(2, 200, rng);
    const int k = oracle::uniform_int(2, static_cast<int>(std::min<Index>(n, 12)), rng);
    const auto folds = kfold_split(n, k, rng());
    std::set<Index> seen;
    std::size_t lo = n, hi = 0;
    for (const auto& f : folds) {
      lo = std::min(lo, f.test.size());
      hi = std::max(hi, f.test.size());
      for (Index i : f.test) ASSERT_TRUE(seen.insert(i).second);
      ASSERT_EQ(f.test.size() + f.train.size(), static_cast<std::size_t>(n));
    }
    ASSERT_EQ(seen.size(), static_cast<std::size_t>(n));
    ASSERT_LE(hi - lo, 1u);
  }
}

TEST(Property, SelectBestIgnoresOrder) {
  std::mt19937_64 rng(104);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<ScoreRow> table;
    for (double l : {0.01, 0.1, 1.0}) {
      for (double t : {0.1, 1.0}) table.push_back({l, t, static_cast<double>(oracle::uniform_int(1, 3, rng))});
    }
    const ScoreRow a = select_best(table);
    std::shuffle(table.begin(), table.end(), rng);
    const ScoreRow b = select_best(table);
    ASSERT_EQ(a.lambda, b.lambda);
    ASSERT_EQ(a.tau, b.tau);
  }
}

TEST(Property, CheckpointRoundTrip) {
  oracle::Rng rng(105);
  for (int rep = 0; rep < 20; ++rep) {
    const Index p = oracle::uniform_int(1, 10, rng);
    const ModelState s(oracle::gaussian(p, rng) * 1e3, oracle::spd(p, rng, 1e-6, 1e4),
                       oracle::uniform(1e-8, 10.0, rng), static_cast<std::size_t>(rep));
    const ModelState r = checkpoint_from_json(checkpoint_to_json(s));
    ASSERT_EQ(r.theta(), s.theta());
    ASSERT_EQ(r.sigma(), s.sigma());
    ASSERT_EQ(r.w2(), s.w2());
  }
}

TEST(Property, ReportCsvRoundTrip) {
  oracle::Rng rng(106);
  ReportTable t;
  for (int i = 0; i < 200; ++i) {
    const bool ok = i % 17 != 0;
    t.rows.push_back({i % 2 ? "irs" : "lasso-local", static_cast<std::size_t>(i % 9 + 1),
                      static_cast<std::uint64_t>(i / 9), i % 3 ? "rmse" : "mape",
                      ok ? std::exp(oracle::uniform(-30.0, 30.0, rng)) : std::nan(""), ok ? "ok" : "failed"});
  }
  const auto path = std::filesystem::temp_directory_path() / "irs_prop_report.csv";
  write_report_csv(t, path);
  const ReportTable back = read_report_csv(path);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].ok()) {
      ASSERT_NEAR(back.rows[i].value, t.rows[i].value, 1e-12 * std::abs(t.rows[i].value));
    } else {
      ASSERT_TRUE(std::isnan(back.rows[i].value));
      ASSERT_EQ(back.rows[i].status, "failed");
    }
  }
}

TEST(Property, FeatureColumnsConstantAcrossEpochs) {
  std::mt19937_64 rng(107);
  const std::vector<std::string> products{"A", "B", "C", "D"};
  std::vector<Transaction> recs;
  for (int i = 0; i < 300; ++i) {
    Transaction t;
    // product D only ever appears in March
    const int month = oracle::uniform_int(1, 6, rng);
    t.product = month == 3 ? "D" : products[static_cast<std::size_t>(oracle::uniform_int(0, 2, rng))];
    t.quantity = oracle::uniform_int(1, 20, rng);
    t.price = oracle::uniform(0.5, 5.0, rng);
    t.when = DateTime{2011, month, oracle::uniform_int(1, 28, rng), oracle::uniform_int(0, 23, rng), 0, 0};
    recs.push_back(t);
  }
  const FeatureSet f = build_features(recs);
  ASSERT_EQ(f.stream.size(), 6u);
  const auto d_col = std::find(f.stream.columns.begin(), f.stream.columns.end(), "product=D") - f.stream.columns.begin();
  for (std::size_t e = 0; e < f.stream.size(); ++e) {
    ASSERT_EQ(f.stream.epochs[e].X.cols(), f.stream.dim());
    if (e != 2) ASSERT_TRUE(f.stream.epochs[e].X.col(d_col).isZero(0.0));
  }
}

TEST(Property, StandardizedEpochValidates) {
  oracle::Rng rng(108);
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = oracle::uniform_int(2, 30, rng), p = oracle::uniform_int(1, 6, rng);
    EpochData d{oracle::gaussian(n, p, rng) * 10.0, oracle::gaussian(n, rng), 1};
    if (rep % 3 == 0) d.X.col(0).setConstant(4.0);
    ASSERT_TRUE(validate_epoch(standardize(d).first, p).ok());
  }
}
