#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qgibbs {

/// A finite (volume, value) sequence standing in for a thermodynamic limit,
/// with the fitted limit estimate and residual diagnostics.
struct ExtrapolationSeries {
  std::vector<std::pair<std::size_t, double>> points;  // volumes strictly increasing
  double limit_estimate = 0.0;
  double fit_residual = 0.0;  // max |fit - value| over the fitted window
  std::string method;
};

/// Least-squares fit value = limit + c/V over the last `window` points
/// (surface corrections of finite-range models are O(1/V)). A single point
/// is its own limit.
ExtrapolationSeries extrapolate_one_over_v(
    std::vector<std::pair<std::size_t, double>> points, int window = 4);

}  // namespace qgibbs
