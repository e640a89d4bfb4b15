#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgibbs/energy.hpp"
#include "qgibbs/errors.hpp"
#include "qgibbs/gibbs_engine.hpp"
#include "qgibbs/pauli.hpp"

using namespace qgibbs;

TEST_CASE("region basics: boxes, translation, collar") {
  const Region box = Region::box({0, 0}, {1, 2});
  CHECK(box.volume() == 6);
  CHECK(box.dimension() == 2);
  CHECK(box.is_box());
  CHECK(box.contains(Site{1, 2}));
  CHECK(!box.contains(Site{2, 0}));

  const Region moved = box.translated(Site{3, -1});
  CHECK(moved.volume() == 6);
  CHECK(moved.contains(Site{3, -1}));
  CHECK(moved.contains(Site{4, 1}));

  const Region line = Region::interval(0, 3);
  const Region collar = line.enlarged(2);
  CHECK(collar == Region::interval(-2, 5));
  CHECK(line.enlarged(0) == line);
  CHECK(Region::interval(1, 2).set_minus(Region::interval(2, 2)) == Region::interval(1, 1));
  CHECK(line.diameter() == 3);

  CHECK_THROWS_AS(Region::box({0}, {-1}), GeometryError);
}

TEST_CASE("preset terms are hermitian, traceless, anchored at the origin") {
  for (const auto& pot :
       {classical_ising_potential(1.3), transverse_field_ising_potential(1.0, 0.7),
        xy_potential(0.9), heisenberg_potential(1.1)}) {
    for (const auto& term : pot.terms()) {
      CHECK(term.region.contains(Site{0}));
      CHECK(term.op.hermitian_flagged());
      CHECK(std::abs(term.op.trace()) < 1e-14);
    }
    CHECK(pot.range() <= 1);
  }
  CHECK(classical_ising_potential(1.0).is_diagonal());
  CHECK(!transverse_field_ising_potential(1.0, 1.0).is_diagonal());
  CHECK(transverse_field_ising_potential(1.0, 1.0).is_real());
  CHECK(xy_potential(1.0).is_real());  // the y(x)y product is real
  CHECK(heisenberg_potential(1.0).is_real());
}

TEST_CASE("internal energy: empty potential, ising spectrum, covariance") {
  const Potential empty(2, 1, {});
  CHECK(internal_energy(empty, Region::interval(0, 2)).matrix().norm() == 0.0);

  // 1D classical ising on 3 sites: spectrum -2J x2, 0 x4, +2J x2
  const double J = 1.4;
  const Potential ising = classical_ising_potential(J);
  const LocalOperator u = internal_energy(ising, Region::interval(0, 2));
  const SpectralDecomposition eig = herm_eig(u);
  // oracle: the explicit diagonal over spin configurations
  std::vector<double> expected;
  for (int s0 : {1, -1})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) expected.push_back(-J * (s0 * s1 + s1 * s2));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 8; ++i)
    CHECK(eig.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-14));

  // translation covariance: same matrix on a shifted region
  const LocalOperator u2 = internal_energy(ising, Region::interval(3, 5));
  CHECK((u.matrix() - u2.matrix()).norm() == 0.0);
}

TEST_CASE("internal energy: 2D box against a hand-built oracle") {
  const Potential ising2 = classical_ising_potential(1.0, 2);
  const Region square = Region::box({0, 0}, {1, 1});
  const LocalOperator u = internal_energy(ising2, square);
  // sites in canonical order: (0,0),(0,1),(1,0),(1,1); bonds along each axis
  const Matrix z = pauli::z(), id = pauli::id2();
  auto on = [&](int a, int b) {
    Matrix ops[4] = {id, id, id, id};
    ops[a] = z;
    ops[b] = z;
    return oracles::kron(oracles::kron(ops[0], ops[1]), oracles::kron(ops[2], ops[3]));
  };
  // (0,0)-(0,1): positions 0,1; (1,0)-(1,1): 2,3; (0,0)-(1,0): 0,2; (0,1)-(1,1): 1,3
  const Matrix expected = -(on(0, 1) + on(2, 3) + on(0, 2) + on(1, 3));
  CHECK((u.matrix() - expected).norm() < 1e-13);
}

TEST_CASE("internal energy is additive over well-separated regions") {
  const Potential tfi = transverse_field_ising_potential(1.0, 0.5);
  const Region left = Region::interval(0, 1), right = Region::interval(3, 4);
  const Region both = left.set_union(right);
  const Matrix sum = embed(internal_energy(tfi, left), both).matrix() +
                     embed(internal_energy(tfi, right), both).matrix();
  CHECK((internal_energy(tfi, both).matrix() - sum).norm() < 1e-13);
}

TEST_CASE("surface energy: crossing bonds, zero-range, decomposition identity") {
  const double J = 0.8;
  const Potential ising = classical_ising_potential(J);
  const int n = 4;
  const Region region = Region::interval(1, n);
  const Region ambient = Region::interval(0, n + 1);
  const LocalOperator w = surface_energy(ising, region, ambient);
  CHECK(w.support().volume() == 4);  // two crossing bonds: {0,1} and {n,n+1}
  CHECK(operator_norm(w) == doctest::Approx(2 * J).epsilon(1e-12));

  // U_ambient = U_region + U_rest + W, embedded into the ambient space
  const Region rest = ambient.set_minus(region);
  const Matrix lhs = internal_energy(ising, ambient).matrix();
  const Matrix rhs = embed(internal_energy(ising, region), ambient).matrix() +
                     embed(internal_energy(ising, rest), ambient).matrix() +
                     embed(w, ambient).matrix();
  CHECK((lhs - rhs).norm() < 1e-12);

  // one-site potential has no crossing terms
  Region origin(std::vector<Site>{Site{0}});
  const Potential field(2, 1, {{origin, LocalOperator(origin, 2, -0.7 * pauli::x(), true)}});
  CHECK(operator_norm(surface_energy(field, region, ambient)) == 0.0);

  // collar missing: geometry error
  CHECK_THROWS_AS(surface_energy(ising, Region::interval(0, 3), Region::interval(0, 3)),
                  GeometryError);
}

TEST_CASE("per-site surface norm vanishes like 2J/N and decreases") {
  const double J = 1.0;
  const Potential ising = classical_ising_potential(J);
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 3; n <= 9; n += 2) {
    const Region region = Region::interval(0, n - 1);
    const LocalOperator w = surface_energy(ising, region, region.enlarged(1));
    const double per_site = operator_norm(w) / n;
    CHECK(per_site == doctest::Approx(2 * J / n).epsilon(1e-12));
    CHECK(per_site < previous);
    previous = per_site;
  }
}

TEST_CASE("big banach norm: field, ising bond, zero potential") {
  Region origin(std::vector<Site>{Site{0}});
  const Potential field(2, 1, {{origin, LocalOperator(origin, 2, -0.6 * pauli::x(), true)}});
  CHECK(big_banach_norm(field) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(big_banach_norm(classical_ising_potential(1.3)) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(big_banach_norm(Potential(2, 1, {})) == 0.0);
  // two translates of the bond contain the origin, each weighted 1/2
  const Potential tfi = transverse_field_ising_potential(2.0, 0.5);
  CHECK(big_banach_norm(tfi) == doctest::Approx(2.0 + 0.5).epsilon(1e-12));
}

TEST_CASE("periodic closure matches the ring transfer-matrix oracle") {
  const double beta = 0.9, J = 1.1;
  const Potential ising = classical_ising_potential(J);
  for (int n : {3, 5, 8}) {
    GibbsEngine engine(ising, beta, Region::interval(0, n - 1), Boundary::periodic);
    const double lam_p = 2.0 * std::cosh(beta * J);
    const double lam_m = 2.0 * std::sinh(beta * J);
    const double expected = std::log(std::pow(lam_p, n) + std::pow(lam_m, n));
    CHECK(engine.log_partition() == doctest::Approx(expected).epsilon(1e-12));
  }
  // wrap needs side > range
  CHECK_THROWS_AS(GibbsEngine(ising, beta, Region::interval(0, 0), Boundary::periodic),
                  GeometryError);
}
