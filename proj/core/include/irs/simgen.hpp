#pragma once

// Synthetic sparse, evolving regression streams with known parameter paths.

#include "irs/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace irs {

using Rng = std::mt19937_64;

/// An ordered sequence of epochs, optionally with the true parameters.
struct DataStream {
  std::vector<EpochData> epochs;
  /// True theta_t per epoch, when known.
  std::optional<std::vector<Vector>> truth;
  /// Optional predictor names; empty means x_1..x_p.
  std::vector<std::string> columns;
  /// Echo of the generating configuration.
  std::map<std::string, std::string> meta;

  Index dim() const { return epochs.empty() ? 0 : epochs.front().X.cols(); }
  std::size_t size() const { return epochs.size(); }

  /// First n epochs (or all when n exceeds the length).
  DataStream prefix(std::size_t n) const;
  /// Throws DataError when truth and epochs disagree in length or dimension.
  void check() const;
};

/// Initial-parameter and sampling knobs shared by both experiments.
struct InitOptions {
  /// Fraction of nonzero coordinates at t = 1 (rounded up).
  double sparsity = 0.2;
  /// Exchangeable correlation of the initial multivariate normal draw.
  double correlation = 0.0;
  /// Sample-size window [ceil(low p), floor(high p)].
  double n_low = 1.8;
  double n_high = 2.1;
  /// Standard deviation of the response noise.
  double response_noise_sd = 1.0;
};

struct Exp1Options {
  InitOptions init;
  /// Variance of the per-epoch random walk on active coordinates.
  double walk_variance = 1.0;
};

enum class DriftMode { random_walk, directional };

struct Exp2Config {
  double activation_prob = 0.05;
  double deactivation_threshold = 0.1;
  double deactivation_prob = 0.1;
  DriftMode drift_mode = DriftMode::random_walk;
  /// Variance of the multiplicative factor F_i = 1 + N(0, .) in directional mode.
  double directional_variance = 0.1;
  /// Standard deviation of the additive drift noise.
  double noise_sd = 1.0;
  bool shrink_samples = true;
  /// Linear sample-size ramp from ceil(shrink_start p) to ceil(shrink_end p).
  double shrink_start = 2.0;
  double shrink_end = 0.8;

  void validate() const;
};

/// Dense N(0, C) draw (C = identity or exchangeable) with all but the
/// ceil(sparsity p) largest-magnitude coordinates zeroed.
Vector draw_initial_theta(Index p, const InitOptions& init, Rng& rng);

DataStream gen_exp1(Index p, std::size_t T, std::uint64_t seed, const Exp1Options& opts = {});

/// One transition of the Exp-2 dynamics: activation, deactivation, drift.
/// Newly activated coordinates are drawn from N(0, 1), the marginal of the
/// initial distribution.
Vector evolve_theta_exp2(const Vector& theta, const Exp2Config& cfg, Rng& rng);

DataStream gen_exp2(Index p, std::size_t T, std::uint64_t seed, const Exp2Config& cfg = {},
                    const InitOptions& init = {});

/// Sample sizes used by gen_exp2 when shrink_samples is set.
std::vector<Index> shrink_schedule(Index p, std::size_t T, const Exp2Config& cfg);

std::string to_string(DriftMode mode);
DriftMode drift_mode_from_string(const std::string& name);

}  // namespace irs
