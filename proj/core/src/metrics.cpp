#include "irs/metrics.hpp"

#include "irs/error.hpp"

#include <cmath>
#include <string>

namespace irs {

namespace {

void check_lengths(const std::vector<double>& y, const std::vector<double>& yhat,
                   const char* what) {
  if (y.size() != yhat.size()) {
    throw DataError(std::string(what) + ": length mismatch (" + std::to_string(y.size()) +
                    " vs " + std::to_string(yhat.size()) + ")");
  }
  if (y.empty()) throw DataError(std::string(what) + ": empty input");
}

}  // namespace

double rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
  check_lengths(y, yhat, "rmse");
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - yhat[i];
    sse += r * r;
  }
  return std::sqrt(sse / static_cast<double>(y.size()));
}

MapeResult mape(const std::vector<double>& y, const std::vector<double>& yhat) {
  check_lengths(y, yhat, "mape");
  MapeResult out;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) <= kMapeZeroTol) {
      ++out.skipped;
      continue;
    }
    sum += std::abs(y[i] - yhat[i]) / std::abs(y[i]);
    ++used;
  }
  if (used == 0) throw DataError("MAPE undefined: every response is zero");
  out.value = sum / static_cast<double>(used);
  return out;
}

}  // namespace irs
