#include "irs/experiment.hpp"

#include "irs/checkpoint.hpp"
#include "irs/csv.hpp"
#include "irs/error.hpp"
#include "irs/metrics.hpp"
#include "irs/stream_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace irs {

namespace fs = std::filesystem;
using nlohmann::json;

DataStream StreamSource::materialize(std::uint64_t seed) const {
  if (kind == Kind::csv) return read_stream_bundle(csv_dir);
  if (exp == 1) {
    Exp1Options opts = exp1;
    opts.init = init;
    return gen_exp1(p, T, seed, opts);
  }
  return gen_exp2(p, T, seed, exp2, init);
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ConfigError("config: at least one method is required");
  if (seeds.empty()) throw ConfigError("config: at least one seed is required");
  if (folds < 2) throw ConfigError("config: folds must be at least 2");
  if (!grid && !fixed) throw ConfigError("config: either a grid or fixed hyperparameters is required");
  if (grid) grid->validate();
  if (!(process_noise_sd >= 0.0)) throw ConfigError("config: process_noise_sd must be non-negative");
  descent.validate();
  if (source.kind == StreamSource::Kind::generator) {
    if (source.exp != 1 && source.exp != 2) throw ConfigError("config: generator must be exp1 or exp2");
    if (source.p < 1 || source.T < 1) throw ConfigError("config: p and T must be positive");
    if (source.exp == 2) source.exp2.validate();
  }
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

StreamSource parse_source(const json& j) {
  reject_unknown(j,
                 {"generator", "csv", "p", "T", "sparsity", "correlation", "n_low", "n_high",
                  "response_noise_sd", "walk_variance", "activation_prob",
                  "deactivation_threshold", "deactivation_prob", "drift_mode",
                  "directional_variance", "noise_sd", "shrink_samples", "shrink_start",
                  "shrink_end"},
                 "stream");
  StreamSource s;
  if (j.contains("csv")) {
    if (j.contains("generator")) throw ConfigError("stream: give either 'generator' or 'csv'");
    s.kind = StreamSource::Kind::csv;
    s.csv_dir = j.at("csv").get<std::string>();
    return s;
  }
  const std::string gen = j.value("generator", std::string("exp1"));
  if (gen == "exp1") {
    s.exp = 1;
  } else if (gen == "exp2") {
    s.exp = 2;
  } else {
    throw ConfigError("stream: unknown generator '" + gen + "'");
  }
  read_opt(j, "p", s.p);
  read_opt(j, "T", s.T);
  read_opt(j, "sparsity", s.init.sparsity);
  read_opt(j, "correlation", s.init.correlation);
  read_opt(j, "n_low", s.init.n_low);
  read_opt(j, "n_high", s.init.n_high);
  read_opt(j, "response_noise_sd", s.init.response_noise_sd);
  read_opt(j, "walk_variance", s.exp1.walk_variance);
  read_opt(j, "activation_prob", s.exp2.activation_prob);
  read_opt(j, "deactivation_threshold", s.exp2.deactivation_threshold);
  read_opt(j, "deactivation_prob", s.exp2.deactivation_prob);
  if (j.contains("drift_mode")) s.exp2.drift_mode = drift_mode_from_string(j.at("drift_mode").get<std::string>());
  read_opt(j, "directional_variance", s.exp2.directional_variance);
  read_opt(j, "noise_sd", s.exp2.noise_sd);
  read_opt(j, "shrink_samples", s.exp2.shrink_samples);
  read_opt(j, "shrink_start", s.exp2.shrink_start);
  read_opt(j, "shrink_end", s.exp2.shrink_end);
  return s;
}

DescentConfig parse_descent(const json& j) {
  reject_unknown(j, {"max_iters", "step0", "step_rule", "tol", "adapt_floor", "step_growth", "max_halvings"},
                 "descent");
  DescentConfig d;
  read_opt(j, "max_iters", d.max_iters);
  read_opt(j, "step0", d.step0);
  read_opt(j, "tol", d.tol);
  read_opt(j, "adapt_floor", d.adapt_floor);
  read_opt(j, "step_growth", d.step_growth);
  read_opt(j, "max_halvings", d.max_halvings);
  if (j.contains("step_rule")) {
    const auto rule = j.at("step_rule").get<std::string>();
    if (rule == "constant") {
      d.step_rule = StepRule::constant;
    } else if (rule == "halving-on-increase") {
      d.step_rule = StepRule::halving_on_increase;
    } else {
      throw ConfigError("descent: unknown step_rule '" + rule + "'");
    }
  }
  return d;
}

GridSpec parse_grid(const json& j) {
  reject_unknown(j, {"lambdas", "taus", "k", "n_epochs"}, "grid");
  GridSpec g;
  read_opt(j, "lambdas", g.lambdas);
  read_opt(j, "taus", g.taus);
  read_opt(j, "k", g.k);
  read_opt(j, "n_epochs", g.n_epochs);
  return g;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(json_text);
    reject_unknown(j,
                   {"methods", "stream", "grid", "fixed", "folds", "seeds", "output_dir",
                    "process_noise_sd", "descent", "metrics", "standardize", "checkpoints"},
                   "config");
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j.at("methods")) cfg.methods.push_back(method_from_string(m.get<std::string>()));
    }
    if (j.contains("stream")) cfg.source = parse_source(j.at("stream"));
    if (j.contains("fixed")) {
      const json& f = j.at("fixed");
      reject_unknown(f, {"lambda", "tau"}, "fixed");
      cfg.fixed = Hyperparams(f.at("lambda").get<double>(), f.at("tau").get<double>());
      cfg.grid.reset();
    }
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));
    read_opt(j, "folds", cfg.folds);
    read_opt(j, "seeds", cfg.seeds);
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    read_opt(j, "process_noise_sd", cfg.process_noise_sd);
    if (j.contains("descent")) cfg.descent = parse_descent(j.at("descent"));
    if (j.contains("metrics")) {
      for (const auto& m : j.at("metrics")) {
        const auto name = m.get<std::string>();
        if (name == "mape") {
          cfg.report_mape = true;
        } else if (name != "rmse") {
          throw ConfigError("config: unknown metric '" + name + "'");
        }
      }
    }
    read_opt(j, "standardize", cfg.standardize);
    read_opt(j, "checkpoints", cfg.checkpoints);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::vector<SummaryRow> ReportTable::summary() const {
  std::vector<std::pair<std::string, std::string>> order;  // (method, metric)
  std::size_t max_epoch = 0;
  std::map<std::tuple<std::size_t, std::string, std::string>, std::vector<double>> groups;
  for (const auto& r : rows) {
    const std::pair<std::string, std::string> key{r.method, r.metric};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    max_epoch = std::max(max_epoch, r.epoch);
    auto& g = groups[{r.epoch, r.method, r.metric}];
    if (r.ok()) g.push_back(r.value);
  }
  std::vector<SummaryRow> out;
  for (std::size_t e = 1; e <= max_epoch; ++e) {
    for (const auto& [method, metric] : order) {
      const auto it = groups.find({e, method, metric});
      if (it == groups.end()) continue;
      const auto& v = it->second;
      SummaryRow s{e, method, metric, std::numeric_limits<double>::quiet_NaN(), 0.0, v.size()};
      if (!v.empty()) {
        double sum = 0.0;
        for (double x : v) sum += x;
        s.mean = sum / static_cast<double>(v.size());
        if (v.size() > 1) {
          double ss = 0.0;
          for (double x : v) ss += (x - s.mean) * (x - s.mean);
          s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

double ReportTable::mean(const std::string& method, std::size_t epoch, const std::string& metric) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.ok() && r.method == method && r.epoch == epoch && r.metric == metric) {
      sum += r.value;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void write_report_csv(const ReportTable& table, const fs::path& path) {
  std::ofstream out = open_out(path);
  write_csv_row(out, {"method", "epoch", "seed", "metric", "value", "status"});
  for (const auto& r : table.rows) {
    write_csv_row(out, {r.method, std::to_string(r.epoch), std::to_string(r.seed), r.metric,
                        format_double(r.value), r.status});
  }
}

ReportTable read_report_csv(const fs::path& path) {
  const CsvTable csv = read_csv_file(path);
  const std::vector<std::string> expected{"method", "epoch", "seed", "metric", "value", "status"};
  if (csv.header != expected) throw DataError("'" + path.string() + "' is not a report table");
  ReportTable table;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    if (row.size() != expected.size()) {
      throw DataError("report row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " fields");
    }
    ReportRow r;
    r.method = row[0];
    r.metric = row[3];
    r.status = row[5];
    try {
      r.epoch = std::stoul(row[1]);
      r.seed = std::stoull(row[2]);
    } catch (const std::exception&) {
      throw DataError("report row " + std::to_string(i + 1) + ": bad epoch or seed");
    }
    if (row[4] == "nan") {
      r.value = std::numeric_limits<double>::quiet_NaN();
    } else if (const auto v = parse_double(row[4])) {
      r.value = *v;
    } else {
      throw DataError("report row " + std::to_string(i + 1) + ": bad value '" + row[4] + "'");
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const fs::path& path) {
  std::ofstream out = open_out(path);
  write_csv_row(out, {"epoch", "method", "metric", "mean", "std", "count"});
  for (const auto& s : rows) {
    write_csv_row(out, {std::to_string(s.epoch), s.method, s.metric, format_double(s.mean),
                        format_double(s.std), std::to_string(s.count)});
  }
}

void write_score_table(const std::vector<ScoreRow>& table, const fs::path& path) {
  std::ofstream out = open_out(path);
  write_csv_row(out, {"lambda", "tau", "rmse"});
  for (const auto& r : table) {
    write_csv_row(out, {format_double(r.lambda), format_double(r.tau), format_double(r.rmse)});
  }
}

std::uint64_t evaluation_seed(std::uint64_t seed) { return epoch_fold_seed(seed, 1u << 20); }

namespace {

SequentialSettings settings_for(const ExperimentConfig& cfg, Method m) {
  SequentialSettings s;
  s.method = m;
  s.descent = cfg.descent;
  s.process_noise_sd = cfg.process_noise_sd;
  s.standardize = cfg.standardize;
  return s;
}

bool uses_hyperparams(Method m) { return m == Method::irs || m == Method::lasso_local; }

// Writes the state of a model fitted to every row of every epoch.
void write_checkpoint(const DataStream& stream, SequentialSettings settings, const fs::path& path) {
  SequentialModel model(std::move(settings));
  try {
    for (const auto& ep : stream.epochs) model.update(ep);
  } catch (const Error&) {
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_checkpoint(model.state(), path);
}

}  // namespace

ReportTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ReportTable report;
  json info;
  info["methods"] = json::array();
  for (Method m : cfg.methods) info["methods"].push_back(to_string(m));
  info["unavailable_methods"] = {{"enkf", "ensemble Kalman filter is not implemented"},
                                 {"particle-filter", "particle filter is not implemented"}};
  info["seeds"] = cfg.seeds;
  info["folds"] = cfg.folds;
  info["process_noise_sd"] = cfg.process_noise_sd;
  info["tuning"] = json::array();

  for (std::uint64_t seed : cfg.seeds) {
    const DataStream stream = cfg.source.materialize(seed);
    if (seed == cfg.seeds.front()) info["stream"] = stream.meta;

    for (Method m : cfg.methods) {
      SequentialSettings settings = settings_for(cfg, m);
      const std::string name = to_string(m);
      bool tuning_failed = false;
      std::string tuning_error;

      if (uses_hyperparams(m)) {
        if (cfg.grid) {
          GridSpec grid = *cfg.grid;
          grid.seed = seed;
          if (m == Method::lasso_local) grid.taus = {0.0};
          try {
            const GridResult gr = grid_search(stream, grid, cfg.descent, settings);
            settings.hp = gr.best;
            report.tuning.push_back({seed, name, gr.best, gr.table});
            info["tuning"].push_back({{"seed", seed}, {"method", name}, {"lambda", gr.best.lambda()},
                                      {"tau", gr.best.tau()}, {"score", gr.best_score}});
          } catch (const Error& e) {
            tuning_failed = true;
            tuning_error = e.what();
          }
        } else {
          settings.hp = *cfg.fixed;
        }
      }

      std::vector<EpochPredictions> preds;
      if (tuning_failed) {
        preds.resize(stream.size());
        for (auto& p : preds) {
          p.failed = true;
          p.error = tuning_error;
        }
      } else {
        preds = crossval_predictions(stream, settings, cfg.folds, evaluation_seed(seed));
      }

      for (std::size_t e = 0; e < preds.size(); ++e) {
        const auto nan = std::numeric_limits<double>::quiet_NaN();
        const auto& p = preds[e];
        auto push = [&](const std::string& metric, double value, bool ok) {
          report.rows.push_back({name, e + 1, seed, metric, ok && std::isfinite(value) ? value : nan,
                                 ok && std::isfinite(value) ? "ok" : "failed"});
        };
        if (p.failed || p.y.empty()) {
          push("rmse", nan, false);
          if (cfg.report_mape) push("mape", nan, false);
          continue;
        }
        push("rmse", rmse(p.y, p.yhat), true);
        if (cfg.report_mape) {
          try {
            push("mape", mape(p.y, p.yhat).value, true);
          } catch (const DataError&) {
            push("mape", nan, false);
          }
        }
      }

      if (cfg.checkpoints && !cfg.output_dir.empty() && !tuning_failed) {
        write_checkpoint(stream, settings,
                         cfg.output_dir / "checkpoints" / (name + "_seed" + std::to_string(seed) + ".json"));
      }
    }
  }

  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    write_report_csv(report, cfg.output_dir / "report.csv");
    write_summary_csv(report.summary(), cfg.output_dir / "summary.csv");
    for (const auto& t : report.tuning) {
      write_score_table(t.table, cfg.output_dir / "tuning" /
                                     (t.method + "_seed" + std::to_string(t.seed) + ".csv"));
    }
    std::ofstream out = open_out(cfg.output_dir / "run_info.json");
    out << info.dump(2) << '\n';
  }
  return report;
}

}  // namespace irs
