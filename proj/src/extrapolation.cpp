#include "qgibbs/extrapolation.hpp"

#include <cmath>
#include <sstream>

#include "qgibbs/errors.hpp"

namespace qgibbs {

ExtrapolationSeries extrapolate_one_over_v(
    std::vector<std::pair<std::size_t, double>> points, int window) {
  if (points.empty()) throw ValidationError("extrapolation needs at least one point");
  if (window < 1) throw ValidationError("extrapolation window must be >= 1");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i].first >= points[i + 1].first)
      throw ValidationError("extrapolation volumes must be strictly increasing");
  for (const auto& [v, y] : points) {
    (void)v;
    if (!std::isfinite(y)) throw ValidationError("extrapolation values must be finite");
  }

  ExtrapolationSeries out;
  out.points = std::move(points);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(window),
                                              out.points.size());
  const std::size_t first = out.points.size() - k;
  std::ostringstream m;
  m << "least-squares value = limit + c/V over last " << k << " points";
  out.method = m.str();

  if (k == 1) {
    out.limit_estimate = out.points.back().second;
    out.fit_residual = 0.0;
    return out;
  }

  // normal equations for [limit, c] against regressors [1, 1/V]
  double s11 = 0, s1x = 0, sxx = 0, s1y = 0, sxy = 0;
  for (std::size_t i = first; i < out.points.size(); ++i) {
    const double x = 1.0 / static_cast<double>(out.points[i].first);
    const double y = out.points[i].second;
    s11 += 1.0;
    s1x += x;
    sxx += x * x;
    s1y += y;
    sxy += x * y;
  }
  const double det = s11 * sxx - s1x * s1x;
  double limit, c;
  if (std::abs(det) < 1e-300) {
    limit = s1y / s11;
    c = 0.0;
  } else {
    limit = (sxx * s1y - s1x * sxy) / det;
    c = (s11 * sxy - s1x * s1y) / det;
  }
  out.limit_estimate = limit;
  double res = 0.0;
  for (std::size_t i = first; i < out.points.size(); ++i) {
    const double x = 1.0 / static_cast<double>(out.points[i].first);
    res = std::max(res, std::abs(limit + c * x - out.points[i].second));
  }
  out.fit_residual = res;
  return out;
}

}  // namespace qgibbs
