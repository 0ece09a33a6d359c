#pragma once

#include <utility>
#include <vector>

namespace cpl {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of log y against log x. Needs at least two points
/// with distinct x; every coordinate must be positive and finite.
LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace cpl
