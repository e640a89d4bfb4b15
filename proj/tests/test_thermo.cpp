#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgibbs/errors.hpp"
#include "qgibbs/thermo.hpp"

using namespace qgibbs;

namespace {

std::vector<Region> intervals(std::initializer_list<int> sizes) {
  std::vector<Region> out;
  for (int n : sizes) out.push_back(Region::interval(0, n - 1));
  return out;
}

Matrix diag2(double p, double q) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = q;
  return m;
}

}  // namespace

TEST_CASE("pressure: beta 0 counts dimension; ising matches the transfer matrix") {
  const Potential ising = classical_ising_potential(1.0);
  const auto boxes = intervals({4, 6, 8, 10, 12});

  const ExtrapolationSeries flat = pressure(ising, 0.0, boxes);
  for (const auto& [v, y] : flat.points)
    CHECK(y == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(flat.limit_estimate == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const ExtrapolationSeries p = pressure(ising, 1.0, boxes);
  for (const auto& [v, y] : p.points) {
    const int n = static_cast<int>(v);
    CHECK(std::abs(y - oracles::ising_pressure_per_site(n, 1.0, 1.0)) < 1e-9);
    CHECK(std::abs(y - oracles::ising_log_partition(n, 1.0, 1.0) / n) < 1e-9);
  }
  CHECK(std::abs(p.limit_estimate - std::log(2.0 * std::cosh(1.0))) < 5e-3);
}

TEST_CASE("pressure points vary by O(1/N)") {
  const Potential tfi = transverse_field_ising_potential(1.0, 1.0);
  const ExtrapolationSeries p = pressure(tfi, 0.8, intervals({4, 6, 8, 10}));
  CHECK(p.fit_residual < 1e-3);  // the 1/V model captures the finite-size trend
}

TEST_CASE("energy density: tracial zero, aligned product, finite-difference oracle") {
  const Potential ising = classical_ising_potential(1.0);
  const auto boxes = intervals({3, 4, 5, 6});

  const ExtrapolationSeries zero = energy_density(ising, StateFamily::tracial(2, 1), boxes);
  for (const auto& [v, y] : zero.points) CHECK(std::abs(y) < 1e-14);
  CHECK(std::abs(zero.limit_estimate) < 1e-12);

  // fully aligned product: every bond contributes -J
  const ExtrapolationSeries aligned =
      energy_density(ising, StateFamily::product(diag2(1.0, 0.0), 2, 1), boxes);
  for (const auto& [v, y] : aligned.points) {
    const double n = static_cast<double>(v);
    CHECK(y == doctest::Approx(-(n - 1.0) / n).epsilon(1e-12));
  }
  CHECK(aligned.limit_estimate == doctest::Approx(-1.0).epsilon(1e-9));

  // internal Gibbs energy equals -d/dbeta log Z by centered differences
  const Potential tfi = transverse_field_ising_potential(1.0, 1.0);
  const double beta = 0.8, h = 1e-4;
  const Region box = Region::interval(0, 4);
  const ExtrapolationSeries e =
      energy_density(tfi, StateFamily::internal_gibbs(tfi, beta), {box});
  GibbsEngine plus(tfi, beta + h, box), minus(tfi, beta - h, box);
  const double fd = -(plus.log_partition() - minus.log_partition()) / (2 * h) / 5.0;
  CHECK(std::abs(e.points[0].second - fd) < 1e-5);
}

TEST_CASE("information rate: zero at equilibrium, tracial ising oracle, eq-22 identity") {
  const Potential ising = classical_ising_potential(1.0);
  const double beta = 1.0;
  const auto boxes = intervals({4, 6, 8, 10, 12});

  const ExtrapolationSeries self =
      information_rate(ising, beta, StateFamily::internal_gibbs(ising, beta), boxes);
  for (const auto& [v, y] : self.points) CHECK(std::abs(y) < 1e-9);

  const ExtrapolationSeries tr =
      information_rate(ising, beta, StateFamily::tracial(2, 1), boxes);
  for (const auto& [v, y] : tr.points) CHECK(y >= -1e-10);
  CHECK(std::abs(tr.limit_estimate - std::log(std::cosh(1.0))) < 5e-3);

  // finite-volume identity: S(w|ig) = -S(w) + beta w(U) + log Z
  const Potential tfi = transverse_field_ising_potential(1.0, 1.0);
  const StateFamily omega = StateFamily::product(diag2(0.3, 0.7), 2, 1);
  const StateFamily ig = StateFamily::internal_gibbs(tfi, 0.8);
  for (const Region& box : intervals({4, 6})) {
    const DensityMatrix w = omega.marginal(box);
    const DensityMatrix g = ig.marginal(box);
    const LocalOperator u = internal_energy(tfi, box);
    GibbsEngine engine(tfi, 0.8, box);
    const double lhs = relative_entropy(w, g);
    const double rhs = -von_neumann_entropy(w) + 0.8 * trace_product(w.op(), u).real() +
                       engine.log_partition();
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("free energy functional: tracial value, per-box inequality, equality at gibbs") {
  const Potential ising = classical_ising_potential(1.0);
  const double beta = 1.0;
  const auto boxes = intervals({4, 6, 8, 10});

  const ExtrapolationSeries f =
      free_energy_functional(ising, beta, StateFamily::tracial(2, 1), boxes);
  CHECK(f.limit_estimate == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(f.limit_estimate < std::log(2.0 * std::cosh(1.0)));

  // per-box: S - beta w(U) <= log Z, equality exactly for the gibbs family
  const Potential tfi = transverse_field_ising_potential(1.0, 1.0);
  const StateFamily candidates[] = {StateFamily::tracial(2, 1),
                                    StateFamily::product(diag2(0.2, 0.8), 2, 1),
                                    StateFamily::internal_gibbs(tfi, 0.8)};
  for (const Region& box : intervals({4, 5})) {
    GibbsEngine engine(tfi, 0.8, box);
    const double logz = engine.log_partition();
    const LocalOperator u = internal_energy(tfi, box);
    for (const StateFamily& omega : candidates) {
      const DensityMatrix w = omega.marginal(box);
      const double value =
          von_neumann_entropy(w) - 0.8 * trace_product(w.op(), u).real();
      CHECK(logz - value >= -1e-9);
    }
    const DensityMatrix g = StateFamily::internal_gibbs(tfi, 0.8).marginal(box);
    const double at_gibbs =
        von_neumann_entropy(g) - 0.8 * trace_product(g.op(), u).real();
    CHECK(std::abs(at_gibbs - logz) < 1e-9);
  }
}

TEST_CASE("product fast path equals the generic functional") {
  const Potential tfi = transverse_field_ising_potential(1.0, 0.6);
  const auto boxes = intervals({3, 4, 5});
  for (const auto& v :
       {std::array<double, 3>{0, 0, 0}, {0.3, -0.2, 0.5}, {0.0, 0.0, -0.9}}) {
    const Matrix rho0 = bloch_density(v);
    const ExtrapolationSeries generic = free_energy_functional(
        tfi, 0.9, StateFamily::product(rho0, 2, 1), boxes);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const double fast = product_free_energy_point(tfi, 0.9, rho0, boxes[i]);
      CHECK(fast == doctest::Approx(generic.points[i].second).epsilon(1e-10));
    }
  }
}

TEST_CASE("mean field scan: beta 0 exact center, strong-coupling alignment, bound") {
  const Potential ising = classical_ising_potential(1.0);
  const auto boxes = intervals({3, 4, 5, 6});
  const auto grid = bloch_grid(5);

  const MeanFieldResult at0 = mean_field_scan(ising, 1e-12, grid, boxes);
  CHECK(std::abs(at0.value - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(at0.bloch[0]) < 1e-6);
  CHECK(std::abs(at0.bloch[2]) < 1e-6);

  // strong coupling: maximizer close to a fully polarized z state, matching
  // the scalar mean-field fixed point z = tanh(2 beta J z)
  const MeanFieldResult strong = mean_field_scan(ising, 3.0, grid, boxes);
  double z_star = 1.0;
  for (int k = 0; k < 200; ++k) z_star = std::tanh(2.0 * 3.0 * z_star);
  CHECK(std::abs(strong.bloch[2]) == doctest::Approx(z_star).epsilon(1e-4));
  const double h2 = [&] {
    const double p = 0.5 * (1.0 + z_star);
    return -(p * std::log(p) + (1 - p) * std::log(1 - p));
  }();
  CHECK(strong.value == doctest::Approx(h2 + 3.0 * z_star * z_star).epsilon(1e-5));

  // variational bound against the pressure on every preset
  for (const auto& pot :
       {classical_ising_potential(1.0), transverse_field_ising_potential(1.0, 1.0),
        xy_potential(1.0), heisenberg_potential(1.0)}) {
    const auto pboxes = intervals({4, 6, 8});
    const MeanFieldResult mf = mean_field_scan(pot, 0.8, grid, boxes);
    const ExtrapolationSeries p = pressure(pot, 0.8, pboxes);
    CHECK(mf.value <= p.limit_estimate + 1e-6);
  }

  CHECK_THROWS_AS(mean_field_scan(ising, 1.0, {}, boxes), ValidationError);
}
