#pragma once

// Prediction error metrics.

#include <cstddef>
#include <vector>

namespace irs {

/// Responses with |y| at or below this are left out of MAPE.
inline constexpr double kMapeZeroTol = 1e-12;

/// sqrt(mean((y - yhat)^2)). Throws DataError on a length mismatch or empty input.
double rmse(const std::vector<double>& y, const std::vector<double>& yhat);

struct MapeResult {
  /// Mean of |y - yhat| / |y| as a fraction.
  double value = 0.0;
  std::size_t skipped = 0;
};

/// Throws DataError("MAPE undefined") when every response is zero.
MapeResult mape(const std::vector<double>& y, const std::vector<double>& yhat);

}  // namespace irs
