#include "qgibbs/thermo.hpp"

#include <cmath>

#include "qgibbs/errors.hpp"
#include "qgibbs/pauli.hpp"

namespace qgibbs {

ExtrapolationSeries pressure(const Potential& pot, double beta,
                             const std::vector<Region>& boxes, Boundary bc) {
  if (beta < 0.0) throw ValidationError("pressure: beta must be >= 0");
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(boxes.size());
  for (const Region& box : boxes) {
    GibbsEngine engine(pot, beta, box, bc);
    points.emplace_back(box.volume(),
                        engine.log_partition() / static_cast<double>(box.volume()));
  }
  return extrapolate_one_over_v(std::move(points));
}

ExtrapolationSeries energy_density(const Potential& pot, const StateFamily& omega,
                                   const std::vector<Region>& boxes) {
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(boxes.size());
  for (const Region& box : boxes) {
    const LocalOperator u = internal_energy(pot, box);
    const DensityMatrix rho = omega.marginal(box);
    const double e = trace_product(rho.op(), u).real();
    points.emplace_back(box.volume(), e / static_cast<double>(box.volume()));
  }
  return extrapolate_one_over_v(std::move(points));
}

ExtrapolationSeries information_rate(const Potential& pot, double beta,
                                     const StateFamily& omega,
                                     const std::vector<Region>& boxes, Boundary bc) {
  const StateFamily gibbs = StateFamily::internal_gibbs(pot, beta, bc);
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(boxes.size());
  for (const Region& box : boxes) {
    const DensityMatrix w = omega.marginal(box);
    const DensityMatrix ig = gibbs.marginal(box);
    points.emplace_back(box.volume(),
                        relative_entropy(w, ig) / static_cast<double>(box.volume()));
  }
  return extrapolate_one_over_v(std::move(points));
}

ExtrapolationSeries free_energy_functional(const Potential& pot, double beta,
                                           const StateFamily& omega,
                                           const std::vector<Region>& boxes) {
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(boxes.size());
  for (const Region& box : boxes) {
    const LocalOperator u = internal_energy(pot, box);
    const DensityMatrix rho = omega.marginal(box);
    const double value =
        von_neumann_entropy(rho) - beta * trace_product(rho.op(), u).real();
    points.emplace_back(box.volume(), value / static_cast<double>(box.volume()));
  }
  return extrapolate_one_over_v(std::move(points));
}

// ---------------------------------------------------------------------------
// mean-field scan over product states
// ---------------------------------------------------------------------------

Matrix bloch_density(const std::array<double, 3>& v) {
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (r2 > 1.0 + 1e-12) throw ValidationError("bloch vector must have |v| <= 1");
  Matrix m = 0.5 * (pauli::id2() + v[0] * pauli::x() + v[1] * pauli::y() + v[2] * pauli::z());
  return m;
}

std::vector<Matrix> bloch_grid(int resolution) {
  if (resolution < 2) throw ValidationError("bloch grid resolution must be >= 2");
  std::vector<Matrix> grid;
  grid.push_back(bloch_density({0.0, 0.0, 0.0}));  // exact center first
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      for (int k = 0; k < resolution; ++k) {
        const double x = -1.0 + 2.0 * i / (resolution - 1);
        const double y = -1.0 + 2.0 * j / (resolution - 1);
        const double z = -1.0 + 2.0 * k / (resolution - 1);
        if (x * x + y * y + z * z > 1.0) continue;
        if (x == 0.0 && y == 0.0 && z == 0.0) continue;
        grid.push_back(bloch_density({x, y, z}));
      }
  return grid;
}

namespace {

double single_site_entropy(const Matrix& rho0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

// <Phi(X)>_{rho0^(x|X|)} for one representative
double term_expectation(const InteractionTerm& term, const Matrix& rho0) {
  Matrix prod = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < term.region.volume(); ++k) prod = pauli::kron(prod, rho0);
  return (term.op.matrix() * prod).trace().real();
}

std::array<double, 3> bloch_of(const Matrix& rho0) {
  return {(rho0 * pauli::x()).trace().real(), (rho0 * pauli::y()).trace().real(),
          (rho0 * pauli::z()).trace().real()};
}

struct ProductEvaluator {
  const Potential& pot;
  double beta;
  const std::vector<Region>& boxes;

  ExtrapolationSeries series(const Matrix& rho0) const {
    const double s = single_site_entropy(rho0);
    std::vector<double> expectations;
    expectations.reserve(pot.terms().size());
    for (const auto& t : pot.terms()) expectations.push_back(term_expectation(t, rho0));
    std::vector<std::pair<std::size_t, double>> points;
    points.reserve(boxes.size());
    for (const Region& box : boxes) {
      double energy = 0.0;
      std::size_t idx = 0;
      for (const auto& t : pot.terms()) {
        std::size_t count = 0;
        pot.for_each_internal_translate(box, [&](const InteractionTerm& term, const Site&) {
          if (&term == &t) ++count;
        });
        energy += static_cast<double>(count) * expectations[idx++];
      }
      points.emplace_back(box.volume(),
                          s - beta * energy / static_cast<double>(box.volume()));
    }
    return extrapolate_one_over_v(std::move(points));
  }

  double value(const std::array<double, 3>& v) const {
    return series(bloch_density(v)).limit_estimate;
  }
};

}  // namespace

double product_free_energy_point(const Potential& pot, double beta, const Matrix& rho0,
                                 const Region& box) {
  ProductEvaluator eval{pot, beta, {box}};
  return eval.series(rho0).points[0].second;
}

MeanFieldResult mean_field_scan(const Potential& pot, double beta,
                                const std::vector<Matrix>& grid,
                                const std::vector<Region>& boxes) {
  if (grid.empty()) throw ValidationError("mean_field_scan: empty grid");
  if (pot.site_dim() != 2)
    throw ValidationError("mean_field_scan currently supports site_dim 2");
  ProductEvaluator eval{pot, beta, boxes};

  std::array<double, 3> best{};
  double best_value = -std::numeric_limits<double>::infinity();
  for (const Matrix& rho0 : grid) {
    const auto v = bloch_of(rho0);
    const double f = eval.value(v);
    if (f > best_value) {
      best_value = f;
      best = v;
    }
  }

  // coordinate descent: golden-section line search per Bloch component,
  // staying inside the unit ball, until the parameters settle to 1e-6
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int sweep = 0; sweep < 200; ++sweep) {
    const std::array<double, 3> before = best;
    for (int c = 0; c < 3; ++c) {
      double other = 0.0;
      for (int d = 0; d < 3; ++d)
        if (d != c) other += best[d] * best[d];
      const double bound = std::sqrt(std::max(0.0, 1.0 - other));
      double lo = -bound, hi = bound;
      auto f_at = [&](double t) {
        std::array<double, 3> v = best;
        v[c] = t;
        return eval.value(v);
      };
      double x1 = hi - golden * (hi - lo);
      double x2 = lo + golden * (hi - lo);
      double f1 = f_at(x1), f2 = f_at(x2);
      while (hi - lo > 1e-7) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + golden * (hi - lo);
          f2 = f_at(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - golden * (hi - lo);
          f1 = f_at(x1);
        }
      }
      const double t = 0.5 * (lo + hi);
      if (f_at(t) >= eval.value(best)) best[c] = t;
    }
    double delta = 0.0;
    for (int d = 0; d < 3; ++d) delta = std::max(delta, std::abs(best[d] - before[d]));
    if (delta < 1e-6) break;
  }

  MeanFieldResult out;
  out.bloch = best;
  out.rho0 = bloch_density(best);
  out.series = eval.series(out.rho0);
  out.value = out.series.limit_estimate;
  return out;
}

}  // namespace qgibbs
