#pragma once

// Experiment runner: tune on the first epochs, evaluate each method with
// per-epoch k-fold splits, collect per-epoch test metrics.

#include "irs/sequential.hpp"
#include "irs/tuning.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace irs {

struct StreamSource {
  enum class Kind { generator, csv };
  Kind kind = Kind::generator;
  /// 1 or 2 for the generator.
  int exp = 1;
  Index p = 50;
  std::size_t T = 9;
  InitOptions init{};
  Exp1Options exp1{};
  Exp2Config exp2{};
  /// Bundle directory for Kind::csv.
  std::filesystem::path csv_dir;

  /// Stream for one seed. A CSV bundle ignores the seed.
  DataStream materialize(std::uint64_t seed) const;
};

struct ExperimentConfig {
  std::vector<Method> methods{Method::irs, Method::lasso_local, Method::kalman};
  StreamSource source{};
  /// Exactly one of grid and fixed is used; the grid wins when both are set.
  std::optional<GridSpec> grid = GridSpec{};
  std::optional<Hyperparams> fixed;
  int folds = 10;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir;
  double process_noise_sd = 0.01;
  DescentConfig descent{};
  bool standardize = true;
  bool report_mape = false;
  /// Write the final state of every method fitted to all rows of each epoch.
  bool checkpoints = false;

  /// Throws ConfigError.
  void validate() const;
};

/// Parses the JSON form of ExperimentConfig. Unknown keys are rejected.
/// Throws ConfigError.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ReportRow {
  std::string method;
  std::size_t epoch = 0;
  std::uint64_t seed = 0;
  std::string metric;
  /// NaN for failed rows.
  double value = 0.0;
  /// "ok" or "failed".
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct SummaryRow {
  std::size_t epoch = 0;
  std::string method;
  std::string metric;
  double mean = 0.0;
  /// Sample standard deviation over seeds; 0 for a single seed.
  double std = 0.0;
  std::size_t count = 0;
};

struct TuningRecord {
  std::uint64_t seed = 0;
  std::string method;
  Hyperparams chosen{0.0, 0.0};
  std::vector<ScoreRow> table;
};

struct ReportTable {
  std::vector<ReportRow> rows;
  std::vector<TuningRecord> tuning;

  /// Mean and std of successful rows per (epoch, method, metric), ordered by
  /// epoch, then method and metric in first-appearance order.
  std::vector<SummaryRow> summary() const;
  /// Mean of one method's metric at an epoch over successful rows; NaN if none.
  double mean(const std::string& method, std::size_t epoch,
              const std::string& metric = "rmse") const;
};

/// CSV columns: method, epoch, seed, metric, value, status.
void write_report_csv(const ReportTable& table, const std::filesystem::path& path);
ReportTable read_report_csv(const std::filesystem::path& path);
/// CSV columns: epoch, method, metric, mean, std, count.
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
/// CSV columns: lambda, tau, rmse.
void write_score_table(const std::vector<ScoreRow>& table, const std::filesystem::path& path);

/// Seed of the evaluation folds; the tuning folds use the run seed itself.
std::uint64_t evaluation_seed(std::uint64_t seed);

/// Runs every seed and method. A method that fails on an epoch gets failed
/// rows from there on while the others continue. When output_dir is set the
/// report, summary, tuning tables, run_info.json and optional checkpoints are
/// written there.
ReportTable run_experiment(const ExperimentConfig& cfg);

}  // namespace irs
