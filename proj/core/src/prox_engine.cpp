#include "prox_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace irs::detail {

void set_adaptive_weights(WeightedL1Problem& problem, const Vector& anchor, double lambda,
                          double adapt_floor) {
  const Index p = anchor.size();
  problem.weights = Vector::Zero(p);
  problem.pinned.assign(static_cast<std::size_t>(p), false);
  if (lambda <= 0.0) return;
  for (Index i = 0; i < p; ++i) {
    const double a = std::abs(anchor(i));
    if (a < adapt_floor) {
      problem.pinned[static_cast<std::size_t>(i)] = true;
    } else {
      problem.weights(i) = lambda / (static_cast<double>(p) * a);
    }
  }
}

namespace {

Vector prox_step(const WeightedL1Problem& problem, const Vector& theta, const Vector& grad,
                 double step) {
  Vector next(theta.size());
  for (Index i = 0; i < theta.size(); ++i) {
    if (problem.pinned[static_cast<std::size_t>(i)]) {
      next(i) = 0.0;
    } else {
      next(i) = soft_threshold(theta(i) - step * grad(i), step * problem.weights(i));
    }
  }
  return next;
}

// F(next) - F(theta) evaluated from the difference vector, so it stays
// accurate long after F(next) and F(theta) agree to every printed digit.
double objective_change(const WeightedL1Problem& problem, const Vector& theta, const Vector& next) {
  const Vector d = next - theta;
  double change = 0.5 * d.dot(problem.H * (next + theta)) - problem.b.dot(d);
  for (Index i = 0; i < d.size(); ++i) {
    change += problem.weights(i) * (std::abs(next(i)) - std::abs(theta(i)));
  }
  return change;
}

// Majorization test for the quadratic smooth part: f(next) stays under
// f(theta) + g'd + |d|^2 / (2 step). It rules out steps that overshoot the
// minimum and bounce back with almost no decrease.
bool step_acceptable(const WeightedL1Problem& problem, const Vector& theta, const Vector& next,
                     double step, double change) {
  if (!(change <= 0.0)) return false;
  const Vector d = next - theta;
  return d.dot(problem.H * d) <= (1.0 + 1e-12) * d.squaredNorm() / step;
}

}  // namespace

DescentResult run_proximal_gradient(const WeightedL1Problem& problem, Vector start,
                                    const DescentConfig& cfg) {
  cfg.validate();
  DescentResult result;
  Vector theta = std::move(start);
  for (Index i = 0; i < theta.size(); ++i) {
    if (problem.pinned[static_cast<std::size_t>(i)]) theta(i) = 0.0;
  }
  double value = problem.value(theta);
  result.trace.push_back(value);

  double step = cfg.step0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const Vector grad = problem.gradient(theta);
    Vector candidate = prox_step(problem, theta, grad, step);
    double change = objective_change(problem, theta, candidate);

    if (cfg.step_rule == StepRule::halving_on_increase) {
      int halvings = 0;
      while (!step_acceptable(problem, theta, candidate, step, change) && halvings < cfg.max_halvings) {
        step *= 0.5;
        candidate = prox_step(problem, theta, grad, step);
        change = objective_change(problem, theta, candidate);
        ++halvings;
      }
      if (!(change <= 0.0)) {
        // No decrease is representable any more.
        result.converged = true;
        break;
      }
    }

    const double relative = std::abs(change) / std::max(std::abs(value), std::numeric_limits<double>::min());
    theta = std::move(candidate);
    value = problem.value(theta);
    result.trace.push_back(value);
    ++result.iterations;
    if (relative < cfg.tol) {
      result.converged = true;
      break;
    }
    if (cfg.step_rule == StepRule::halving_on_increase) step *= cfg.step_growth;
  }
  result.theta = std::move(theta);
  return result;
}

}  // namespace irs::detail
