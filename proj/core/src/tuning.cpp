#include "irs/tuning.hpp"

#include "irs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace irs {

std::vector<Fold> kfold_split(Index n, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("kfold_split: k must be at least 2");
  if (static_cast<Index>(k) > n) {
    throw ConfigError("kfold_split: k = " + std::to_string(k) + " exceeds n = " +
                      std::to_string(n));
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t owner = pos % static_cast<std::size_t>(k);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      (f == owner ? folds[f].test : folds[f].train).push_back(order[pos]);
    }
  }
  for (auto& fold : folds) {
    std::sort(fold.train.begin(), fold.train.end());
    std::sort(fold.test.begin(), fold.test.end());
  }
  return folds;
}

std::uint64_t epoch_fold_seed(std::uint64_t seed, std::size_t epoch) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(epoch) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<EpochPredictions> crossval_predictions(const DataStream& stream,
                                                   const SequentialSettings& settings, int k,
                                                   std::uint64_t seed) {
  std::vector<std::vector<Fold>> splits;
  splits.reserve(stream.size());
  for (std::size_t e = 0; e < stream.size(); ++e) {
    splits.push_back(kfold_split(stream.epochs[e].X.rows(), k, epoch_fold_seed(seed, e)));
  }

  std::vector<EpochPredictions> out(stream.size());
  for (int f = 0; f < k; ++f) {
    SequentialModel model(settings);
    for (std::size_t e = 0; e < stream.size(); ++e) {
      const EpochData& epoch = stream.epochs[e];
      const Fold& fold = splits[e][static_cast<std::size_t>(f)];
      try {
        model.update(select_rows(epoch, fold.train));
        const EpochData test = select_rows(epoch, fold.test);
        const Vector yhat = model.predict(test.X);
        for (Index i = 0; i < test.y.size(); ++i) {
          out[e].y.push_back(test.y(i));
          out[e].yhat.push_back(yhat(i));
        }
      } catch (const Error& err) {
        for (std::size_t rest = e; rest < stream.size(); ++rest) {
          if (!out[rest].failed) {
            out[rest].failed = true;
            out[rest].error = err.what();
          }
        }
        break;
      }
    }
  }
  return out;
}

void GridSpec::validate() const {
  if (lambdas.empty() || taus.empty()) throw ConfigError("grid: lambda and tau lists must be non-empty");
  for (double v : lambdas) {
    if (!(v >= 0.0)) throw ConfigError("grid: lambdas must be non-negative");
  }
  for (double v : taus) {
    if (!(v >= 0.0)) throw ConfigError("grid: taus must be non-negative");
  }
  if (k < 2) throw ConfigError("grid: k must be at least 2");
  if (n_epochs < 1) throw ConfigError("grid: n_epochs must be at least 1");
}

double cv_score(const DataStream& prefix, const Hyperparams& hp, int k, std::uint64_t seed,
                const DescentConfig& cfg, const SequentialSettings& base) {
  if (prefix.size() == 0) throw ConfigError("cv_score: empty stream prefix");
  SequentialSettings settings = base;
  settings.hp = hp;
  settings.descent = cfg;
  const auto preds = crossval_predictions(prefix, settings, k, seed);

  double sse = 0.0;
  std::size_t count = 0;
  for (const auto& epoch : preds) {
    if (epoch.failed) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < epoch.y.size(); ++i) {
      const double r = epoch.y[i] - epoch.yhat[i];
      sse += r * r;
    }
    count += epoch.y.size();
  }
  const double score = std::sqrt(sse / static_cast<double>(count));
  return std::isfinite(score) ? score : std::numeric_limits<double>::infinity();
}

ScoreRow select_best(const std::vector<ScoreRow>& table) {
  const ScoreRow* best = nullptr;
  for (const auto& row : table) {
    if (!std::isfinite(row.rmse)) continue;
    if (best == nullptr || row.rmse < best->rmse ||
        (row.rmse == best->rmse &&
         (row.lambda > best->lambda || (row.lambda == best->lambda && row.tau > best->tau)))) {
      best = &row;
    }
  }
  if (best == nullptr) throw NumericalError("no feasible hyperparameters");
  return *best;
}

GridResult grid_search(const DataStream& stream, const GridSpec& grid, const DescentConfig& cfg,
                       const SequentialSettings& base) {
  grid.validate();
  const DataStream prefix = stream.prefix(grid.n_epochs);
  GridResult result;
  for (double lambda : grid.lambdas) {
    for (double tau : grid.taus) {
      const double score = cv_score(prefix, Hyperparams(lambda, tau), grid.k, grid.seed, cfg, base);
      result.table.push_back({lambda, tau, score});
    }
  }
  const ScoreRow best = select_best(result.table);
  result.best = Hyperparams(best.lambda, best.tau);
  result.best_score = best.rmse;
  return result;
}

}  // namespace irs
