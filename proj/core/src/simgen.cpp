#include "irs/simgen.hpp"

#include "irs/csv.hpp"
#include "irs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace irs {

namespace {

// ceil/floor that ignore representation noise such as 0.2 * 50 = 10.000000000000002.
Index robust_ceil(double x) { return static_cast<Index>(std::ceil(x - 1e-9)); }
Index robust_floor(double x) { return static_cast<Index>(std::floor(x + 1e-9)); }

std::string num(double v) { return format_double(v); }

EpochData sample_epoch(const Vector& theta, Index n, double noise_sd, std::size_t t, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index p = theta.size();
  EpochData epoch;
  epoch.t = t;
  epoch.X.resize(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) epoch.X(i, j) = normal(rng);
  }
  epoch.y = epoch.X * theta;
  for (Index i = 0; i < n; ++i) epoch.y(i) += noise_sd * normal(rng);
  return epoch;
}

Index uniform_size(Index p, const InitOptions& init, Rng& rng) {
  const Index lo = robust_ceil(init.n_low * static_cast<double>(p));
  const Index hi = std::max(lo, robust_floor(init.n_high * static_cast<double>(p)));
  std::uniform_int_distribution<Index> pick(lo, hi);
  return pick(rng);
}

void check_sizes(Index p, std::size_t T) {
  if (p < 2) throw ConfigError("generator: p must be at least 2");
  if (T < 1) throw ConfigError("generator: T must be at least 1");
}

void echo_init(std::map<std::string, std::string>& meta, const InitOptions& init) {
  meta["sparsity"] = num(init.sparsity);
  meta["correlation"] = num(init.correlation);
  meta["n_low"] = num(init.n_low);
  meta["n_high"] = num(init.n_high);
  meta["response_noise_sd"] = num(init.response_noise_sd);
}

}  // namespace

DataStream DataStream::prefix(std::size_t n) const {
  DataStream out;
  out.columns = columns;
  out.meta = meta;
  const std::size_t k = std::min(n, epochs.size());
  out.epochs.assign(epochs.begin(), epochs.begin() + static_cast<std::ptrdiff_t>(k));
  if (truth) {
    out.truth = std::vector<Vector>(truth->begin(), truth->begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

void DataStream::check() const {
  if (truth) {
    if (truth->size() != epochs.size()) {
      throw DataError("stream: truth path length differs from the number of epochs");
    }
    for (std::size_t t = 0; t < epochs.size(); ++t) {
      if ((*truth)[t].size() != epochs[t].X.cols()) {
        throw DataError("stream: truth dimension differs from epoch " + std::to_string(t + 1));
      }
    }
  }
  if (!columns.empty()) {
    for (const auto& e : epochs) {
      if (static_cast<std::size_t>(e.X.cols()) != columns.size()) {
        throw DataError("stream: column names do not match the predictor count");
      }
    }
  }
}

void Exp2Config::validate() const {
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob(activation_prob) || !prob(deactivation_prob)) {
    throw ConfigError("exp2: probabilities must lie in [0, 1]");
  }
  if (!(deactivation_threshold >= 0.0)) throw ConfigError("exp2: threshold must be >= 0");
  if (!(noise_sd >= 0.0) || !(directional_variance >= 0.0)) {
    throw ConfigError("exp2: noise scales must be >= 0");
  }
  if (!(shrink_start > 0.0) || !(shrink_end > 0.0)) {
    throw ConfigError("exp2: shrink factors must be positive");
  }
}

Vector draw_initial_theta(Index p, const InitOptions& init, Rng& rng) {
  if (!(init.correlation >= 0.0 && init.correlation < 1.0)) {
    throw ConfigError("generator: correlation must lie in [0, 1)");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double shared = normal(rng);
  Vector dense(p);
  const double own = std::sqrt(1.0 - init.correlation);
  const double common = std::sqrt(init.correlation) * shared;
  for (Index i = 0; i < p; ++i) dense(i) = own * normal(rng) + common;

  const Index keep = std::clamp<Index>(robust_ceil(init.sparsity * static_cast<double>(p)), 0, p);
  std::vector<Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(dense(a)) > std::abs(dense(b));
  });
  Vector theta = Vector::Zero(p);
  for (Index k = 0; k < keep; ++k) {
    const Index i = order[static_cast<std::size_t>(k)];
    theta(i) = dense(i);
  }
  return theta;
}

DataStream gen_exp1(Index p, std::size_t T, std::uint64_t seed, const Exp1Options& opts) {
  check_sizes(p, T);
  if (!(opts.walk_variance >= 0.0)) throw ConfigError("exp1: walk variance must be >= 0");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double walk_sd = std::sqrt(opts.walk_variance);

  DataStream stream;
  stream.truth.emplace();
  Vector theta = draw_initial_theta(p, opts.init, rng);
  for (std::size_t t = 1; t <= T; ++t) {
    if (t > 1) {
      for (Index i = 0; i < p; ++i) {
        if (theta(i) != 0.0) theta(i) += walk_sd * normal(rng);
      }
    }
    const Index n = uniform_size(p, opts.init, rng);
    stream.epochs.push_back(sample_epoch(theta, n, opts.init.response_noise_sd, t, rng));
    stream.truth->push_back(theta);
  }
  stream.meta["generator"] = "exp1";
  stream.meta["p"] = std::to_string(p);
  stream.meta["T"] = std::to_string(T);
  stream.meta["seed"] = std::to_string(seed);
  stream.meta["walk_variance"] = num(opts.walk_variance);
  echo_init(stream.meta, opts.init);
  return stream;
}

Vector evolve_theta_exp2(const Vector& theta, const Exp2Config& cfg, Rng& rng) {
  cfg.validate();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double dir_sd = std::sqrt(cfg.directional_variance);

  Vector next = theta;
  for (Index i = 0; i < theta.size(); ++i) {
    const double u = unit(rng);
    if (theta(i) == 0.0) {
      if (u < cfg.activation_prob) next(i) = normal(rng);
      continue;
    }
    if (std::abs(theta(i)) < cfg.deactivation_threshold && u < cfg.deactivation_prob) {
      next(i) = 0.0;
      continue;
    }
    double value = theta(i);
    if (cfg.drift_mode == DriftMode::directional) value *= 1.0 + dir_sd * normal(rng);
    value += cfg.noise_sd * normal(rng);
    next(i) = value;
  }
  return next;
}

std::vector<Index> shrink_schedule(Index p, std::size_t T, const Exp2Config& cfg) {
  std::vector<Index> sizes;
  const double start = cfg.shrink_start * static_cast<double>(p);
  const double end = cfg.shrink_end * static_cast<double>(p);
  for (std::size_t t = 0; t < T; ++t) {
    const double frac = T > 1 ? static_cast<double>(t) / static_cast<double>(T - 1) : 0.0;
    sizes.push_back(std::max<Index>(2, robust_ceil(start + (end - start) * frac)));
  }
  return sizes;
}

DataStream gen_exp2(Index p, std::size_t T, std::uint64_t seed, const Exp2Config& cfg,
                    const InitOptions& init) {
  check_sizes(p, T);
  cfg.validate();
  Rng rng(seed);
  const std::vector<Index> schedule = shrink_schedule(p, T, cfg);

  DataStream stream;
  stream.truth.emplace();
  Vector theta = draw_initial_theta(p, init, rng);
  for (std::size_t t = 1; t <= T; ++t) {
    if (t > 1) theta = evolve_theta_exp2(theta, cfg, rng);
    const Index n = cfg.shrink_samples ? schedule[t - 1] : uniform_size(p, init, rng);
    stream.epochs.push_back(sample_epoch(theta, n, init.response_noise_sd, t, rng));
    stream.truth->push_back(theta);
  }
  stream.meta["generator"] = "exp2";
  stream.meta["p"] = std::to_string(p);
  stream.meta["T"] = std::to_string(T);
  stream.meta["seed"] = std::to_string(seed);
  stream.meta["activation_prob"] = num(cfg.activation_prob);
  stream.meta["deactivation_threshold"] = num(cfg.deactivation_threshold);
  stream.meta["deactivation_prob"] = num(cfg.deactivation_prob);
  stream.meta["drift_mode"] = to_string(cfg.drift_mode);
  stream.meta["directional_variance"] = num(cfg.directional_variance);
  stream.meta["noise_sd"] = num(cfg.noise_sd);
  stream.meta["shrink_samples"] = cfg.shrink_samples ? "true" : "false";
  stream.meta["shrink_start"] = num(cfg.shrink_start);
  stream.meta["shrink_end"] = num(cfg.shrink_end);
  echo_init(stream.meta, init);
  return stream;
}

std::string to_string(DriftMode mode) {
  return mode == DriftMode::directional ? "directional" : "random-walk";
}

DriftMode drift_mode_from_string(const std::string& name) {
  if (name == "random-walk" || name == "random_walk") return DriftMode::random_walk;
  if (name == "directional") return DriftMode::directional;
  throw ConfigError("unknown drift mode '" + name + "'");
}

}  // namespace irs
