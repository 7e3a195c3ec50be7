// irs: command-line front end for experiments, tuning, stream generation and
// transaction feature extraction.
//
// Exit codes: 0 success, 1 configuration error, 2 data error,
// 3 numerical failure of every method.

#include "irs/error.hpp"
#include "irs/experiment.hpp"
#include "irs/features.hpp"
#include "irs/stream_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace {

using namespace irs;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kConfig = 1, kData = 2, kNumerical = 3 };

int cmd_run(const fs::path& config_path) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  const ReportTable report = run_experiment(cfg);

  bool any_ok = false;
  for (const auto& r : report.rows) any_ok = any_ok || r.ok();
  for (const auto& s : report.summary()) {
    std::printf("epoch %zu  %-12s %-5s mean %.6g  std %.3g  (%zu)\n", s.epoch, s.method.c_str(),
                s.metric.c_str(), s.mean, s.std, s.count);
  }
  if (!cfg.output_dir.empty()) std::printf("wrote %s\n", (cfg.output_dir / "report.csv").c_str());
  if (!any_ok) {
    std::fprintf(stderr, "irs: every method failed\n");
    return kNumerical;
  }
  return kOk;
}

int cmd_tune(const fs::path& config_path, const std::string& method_name) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!cfg.grid) throw ConfigError("tune: the config has no grid");
  const Method method = method_from_string(method_name);
  SequentialSettings base;
  base.method = method;
  base.descent = cfg.descent;
  base.process_noise_sd = cfg.process_noise_sd;
  base.standardize = cfg.standardize;

  for (std::uint64_t seed : cfg.seeds) {
    GridSpec grid = *cfg.grid;
    grid.seed = seed;
    if (method == Method::lasso_local) grid.taus = {0.0};
    const GridResult gr = grid_search(cfg.source.materialize(seed), grid, cfg.descent, base);
    std::printf("seed %llu: lambda %g tau %g rmse %.6g\n", static_cast<unsigned long long>(seed),
                gr.best.lambda(), gr.best.tau(), gr.best_score);
    if (cfg.output_dir.empty()) {
      std::printf("lambda,tau,rmse\n");
      for (const auto& r : gr.table) std::printf("%.17g,%.17g,%.17g\n", r.lambda, r.tau, r.rmse);
    } else {
      const fs::path out = cfg.output_dir / ("scores_" + method_name + "_seed" + std::to_string(seed) + ".csv");
      write_score_table(gr.table, out);
      std::printf("wrote %s\n", out.c_str());
    }
  }
  return kOk;
}

struct GenArgs {
  int exp = 1;
  Index p = 50;
  std::size_t T = 9;
  std::uint64_t seed = 1;
  fs::path out;
  std::string drift = "random-walk";
  bool no_shrink = false;
};

int cmd_gen(const GenArgs& a) {
  DataStream stream;
  if (a.exp == 1) {
    stream = gen_exp1(a.p, a.T, a.seed);
  } else {
    Exp2Config cfg;
    cfg.drift_mode = drift_mode_from_string(a.drift);
    cfg.shrink_samples = !a.no_shrink;
    stream = gen_exp2(a.p, a.T, a.seed, cfg);
  }
  write_stream_bundle(stream, a.out);
  std::printf("wrote %zu epochs (p = %lld) to %s\n", stream.size(), static_cast<long long>(stream.dim()),
              a.out.c_str());
  return kOk;
}

// The map file holds column names and, optionally, feature options:
// {"product": "...", "quantity": "...", "date": "...", "price": "...",
//  "country": "...", "features": {"numeric": [...], "categorical": [...],
//  "interactions": true, "skip_same_categorical": false, "country": "..."}}
int cmd_features(const fs::path& in, const fs::path& map_path, const fs::path& out) {
  ColumnMap map;
  FeatureSpec spec;
  {
    std::ifstream f(map_path);
    if (!f) throw ConfigError("cannot open map '" + map_path.string() + "'");
    nlohmann::json j;
    try {
      f >> j;
      for (const auto& [key, value] : j.items()) {
        if (key == "product") map.product = value.get<std::string>();
        else if (key == "quantity") map.quantity = value.get<std::string>();
        else if (key == "date") map.date = value.get<std::string>();
        else if (key == "price") map.price = value.get<std::string>();
        else if (key == "country") map.country = value.get<std::string>();
        else if (key == "features") {
          for (const auto& [fk, fv] : value.items()) {
            if (fk == "numeric") spec.numeric = fv.get<std::vector<std::string>>();
            else if (fk == "categorical") spec.categorical = fv.get<std::vector<std::string>>();
            else if (fk == "interactions") spec.interactions = fv.get<bool>();
            else if (fk == "skip_same_categorical") spec.skip_same_categorical = fv.get<bool>();
            else if (fk == "country") spec.country = fv.get<std::string>();
            else throw ConfigError("map: unknown feature option '" + fk + "'");
          }
        } else {
          throw ConfigError("map: unknown key '" + key + "'");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("map: ") + e.what());
    }
  }
  const TransactionLoad load = load_transactions(in, map);
  const FeatureSet fs_ = build_features(load.records, spec);
  write_stream_bundle(fs_.stream, out);
  std::printf("%zu records (%zu dropped), %zu epochs, %lld columns (%zu base)\n", load.records.size(),
              load.dropped, fs_.stream.size(), static_cast<long long>(fs_.stream.dim()),
              fs_.base_columns);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse sequential regression with inertial regularization"};
  app.require_subcommand(1);

  fs::path run_config;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", run_config, "Experiment config")->required();

  fs::path tune_config;
  std::string tune_method = "irs";
  auto* tune = app.add_subcommand("tune", "Grid-search (lambda, tau) and emit the score table");
  tune->add_option("--config", tune_config, "Experiment config")->required();
  tune->add_option("--method", tune_method, "irs or lasso-local")->capture_default_str();

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic stream as a CSV bundle");
  gen->add_option("--exp", gen_args.exp, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  gen->add_option("--p", gen_args.p, "Number of predictors")->required()->check(CLI::PositiveNumber);
  gen->add_option("--T", gen_args.T, "Number of epochs")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "Random seed")->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();
  gen->add_option("--drift", gen_args.drift, "Exp-2 drift: random-walk or directional")->capture_default_str();
  gen->add_flag("--no-shrink", gen_args.no_shrink, "Exp-2: keep sample sizes constant");

  fs::path feat_in, feat_map, feat_out;
  auto* feat = app.add_subcommand("features", "Build monthly epochs from a transaction CSV");
  feat->add_option("--in", feat_in, "Transaction CSV")->required();
  feat->add_option("--map", feat_map, "Column map JSON")->required();
  feat->add_option("--out", feat_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_config);
    if (*tune) return cmd_tune(tune_config, tune_method);
    if (*gen) return cmd_gen(gen_args);
    if (*feat) return cmd_features(feat_in, feat_map, feat_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "irs: %s\n", e.what());
    return kConfig;
  } catch (const DataError& e) {
    std::fprintf(stderr, "irs: %s\n", e.what());
    return kData;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "irs: %s\n", e.what());
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "irs: %s\n", e.what());
    return kData;
  }
  return kOk;
}
