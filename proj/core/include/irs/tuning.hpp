#pragma once

// k-fold cross-validated grid search over (lambda, tau).

#include "irs/sequential.hpp"

#include <cstdint>
#include <vector>

namespace irs {

struct Fold {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Shuffles 0..n-1 with the seed and deals indices round-robin into k folds.
/// Throws ConfigError unless 2 <= k <= n.
std::vector<Fold> kfold_split(Index n, int k, std::uint64_t seed);

/// Seed for the row folds of epoch `epoch` (0-based) derived from a run seed.
std::uint64_t epoch_fold_seed(std::uint64_t seed, std::size_t epoch);

/// k-fold evaluation: for each fold the method is run from scratch over every
/// epoch of the stream using only that fold's training rows, and predicts the
/// fold's test rows after each update. A failed update marks that epoch and
/// all later epochs of the fold as failed. Row folds are drawn
/// independently per epoch from the seed.
std::vector<EpochPredictions> crossval_predictions(const DataStream& stream,
                                                   const SequentialSettings& settings, int k,
                                                   std::uint64_t seed);

struct GridSpec {
  std::vector<double> lambdas{0.001, 0.01, 0.1, 1.0, 10.0};
  std::vector<double> taus{0.01, 0.1, 1.0, 10.0, 100.0};
  int k = 10;
  std::size_t n_epochs = 3;
  std::uint64_t seed = 0;

  /// Throws ConfigError for empty lists, negative values or k < 2.
  void validate() const;
};

struct ScoreRow {
  double lambda = 0.0;
  double tau = 0.0;
  double rmse = 0.0;
};

struct GridResult {
  Hyperparams best{0.0, 0.0};
  double best_score = 0.0;
  std::vector<ScoreRow> table;
};

/// Pooled held-out rMSE of the sequential method over the stream prefix.
/// Estimation failures yield +infinity rather than an exception.
double cv_score(const DataStream& prefix, const Hyperparams& hp, int k, std::uint64_t seed,
                const DescentConfig& cfg = {}, const SequentialSettings& base = {});

/// Minimum-score entry; ties go to the larger lambda, then the larger tau.
/// Throws NumericalError("no feasible hyperparameters") when every score is infinite.
ScoreRow select_best(const std::vector<ScoreRow>& table);

/// Scores every grid point on the first grid.n_epochs epochs and returns the best.
GridResult grid_search(const DataStream& stream, const GridSpec& grid,
                       const DescentConfig& cfg = {}, const SequentialSettings& base = {});

}  // namespace irs
