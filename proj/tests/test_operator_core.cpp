#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qgibbs/errors.hpp"
#include "qgibbs/operator_core.hpp"
#include "qgibbs/pauli.hpp"

using namespace qgibbs;

namespace {
std::mt19937_64 rng(20240802);

Region chain(int n) { return Region::interval(0, n - 1); }
}  // namespace

TEST_CASE("embed: identity and pauli cases") {
  const LocalOperator id1 = LocalOperator::identity(Region::interval(0, 0), 2);
  const LocalOperator e = embed(id1, chain(2));
  CHECK((e.matrix() - Matrix::Identity(4, 4)).norm() == 0.0);

  const LocalOperator sz(Region::interval(0, 0), 2, pauli::z(), true);
  const LocalOperator ez = embed(sz, chain(2));
  CHECK((ez.matrix() - oracles::kron(pauli::z(), pauli::id2())).norm() == 0.0);
  CHECK(std::abs(ez.trace()) == 0.0);
  CHECK(operator_norm(ez) == doctest::Approx(1.0).epsilon(1e-12));

  // acting on the *second* site picks the other factor order
  const LocalOperator sz1(Region::interval(1, 1), 2, pauli::z(), true);
  const LocalOperator ez1 = embed(sz1, chain(2));
  CHECK((ez1.matrix() - oracles::kron(pauli::id2(), pauli::z())).norm() == 0.0);
}

TEST_CASE("embed: trace scaling against the kronecker oracle") {
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = oracles::random_matrix(rng, 2);
    const LocalOperator op(Region::interval(0, 0), 2, a);
    const LocalOperator e = embed(op, chain(3));
    const Matrix expected = oracles::kron(a, oracles::kron(pauli::id2(), pauli::id2()));
    CHECK((e.matrix() - expected).norm() < 1e-14);
    CHECK(std::abs(e.trace() - a.trace() * 4.0) < 1e-12);

    // middle site: I (x) a (x) I
    const LocalOperator op1(Region::interval(1, 1), 2, a);
    const Matrix expected1 = oracles::kron(pauli::id2(), oracles::kron(a, pauli::id2()));
    CHECK((embed(op1, chain(3)).matrix() - expected1).norm() < 1e-14);
  }
}

TEST_CASE("embed: containment and cap errors") {
  const LocalOperator sz(Region::interval(5, 5), 2, pauli::z(), true);
  CHECK_THROWS_AS(embed(sz, chain(3)), ContainmentError);

  const std::size_t old_cap = dimension_cap();
  set_dimension_cap(8);
  CHECK_THROWS_AS(embed(LocalOperator::identity(Region::interval(0, 0), 2), chain(5)),
                  ResourceError);
  set_dimension_cap(old_cap);
}

TEST_CASE("partial_trace: product case and maximally entangled state") {
  const Matrix rho = oracles::random_density(rng, 2);
  const Matrix sigma = oracles::random_matrix(rng, 2);
  const LocalOperator prod(chain(2), 2, oracles::kron(rho, sigma));
  const LocalOperator kept = partial_trace(prod, Region::interval(0, 0));
  CHECK((kept.matrix() - rho * sigma.trace()).norm() < 1e-14);

  // |00> + |11>, reduced to either site: maximally mixed
  Eigen::VectorXcd bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  const LocalOperator pure(chain(2), 2, bell * bell.adjoint(), true);
  for (int site = 0; site < 2; ++site) {
    const LocalOperator red = partial_trace(pure, Region::interval(site, site));
    CHECK((red.matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);
  }

  // full-support keep is the identity operation
  const LocalOperator same = partial_trace(prod, chain(2));
  CHECK((same.matrix() - prod.matrix()).norm() == 0.0);

  CHECK_THROWS_AS(partial_trace(prod, Region::interval(0, 2)), ContainmentError);
}

TEST_CASE("partial_trace composes and is the adjoint of embed") {
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix x = oracles::random_matrix(rng, 16);
    const LocalOperator X(chain(4), 2, x);
    const Region mid = Region::interval(1, 2);
    const Region one = Region::interval(2, 2);
    const Matrix two_step = partial_trace(partial_trace(X, mid), one).matrix();
    const Matrix direct = partial_trace(X, one).matrix();
    CHECK((two_step - direct).norm() < 1e-10);

    const Matrix b = oracles::random_matrix(rng, 4);
    const LocalOperator B(mid, 2, b);
    const cplx lhs = (partial_trace(X, mid).matrix() * B.matrix()).trace();
    const cplx rhs = (X.matrix() * embed(B, chain(4)).matrix()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("herm_eig: pauli spectrum, support rank, reconstruction") {
  const LocalOperator sx(Region::interval(0, 0), 2, pauli::x(), true);
  const SpectralDecomposition ex = herm_eig(sx);
  CHECK(ex.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ex.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

  Matrix d3 = Matrix::Zero(3, 3);
  d3(1, 1) = 0.3;
  d3(2, 2) = 0.7;
  const LocalOperator diag3(Region::interval(0, 0), 3, d3, true);
  CHECK(herm_eig(diag3, 1e-12).support_rank == 2);

  Matrix g = oracles::random_matrix(rng, 2);
  CHECK_THROWS_AS(herm_eig(LocalOperator(Region::interval(0, 0), 2, g)), ValidationError);

  for (int rep = 0; rep < 100; ++rep) {
    const Matrix h = oracles::random_hermitian(rng, 16);
    const LocalOperator a(chain(4), 2, h, true);
    const SpectralDecomposition eig = herm_eig(a);
    const Matrix rebuilt = eig.eigenvectors * eig.eigenvalues.cast<cplx>().asDiagonal() *
                           eig.eigenvectors.adjoint();
    CHECK((rebuilt - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(16, 16)).norm() <
          1e-10);
  }
}

TEST_CASE("matrix_function: exp, log_on_support, round trip") {
  const Region r = Region::interval(0, 0);
  const LocalOperator zero = LocalOperator::zero(r, 2);
  CHECK((matrix_function(zero, MatrixFn::exp).op.matrix() - Matrix::Identity(2, 2)).norm() <
        1e-15);

  Matrix half = 0.5 * Matrix::Identity(2, 2);
  const MatrixFnResult lg =
      matrix_function(LocalOperator(r, 2, half, true), MatrixFn::log_on_support);
  CHECK(lg.support_rank == 2);
  CHECK(lg.op.matrix()(0, 0).real() == doctest::Approx(-std::log(2.0)).epsilon(1e-14));

  // log of a negative operator is a domain error
  Matrix neg = -Matrix::Identity(2, 2);
  CHECK_THROWS_AS(matrix_function(LocalOperator(r, 2, neg, true), MatrixFn::log_on_support),
                  DomainError);

  std::uniform_int_distribution<int> pick(2, 4);
  for (int rep = 0; rep < 100; ++rep) {
    const int sites = pick(rng);
    const Region rr = chain(sites);
    const Matrix rho = oracles::random_density(rng, 1 << sites);
    const LocalOperator op(rr, 2, rho, true);
    const Matrix back =
        matrix_function(matrix_function(op, MatrixFn::log_on_support).op, MatrixFn::exp)
            .op.matrix();
    CHECK((back - rho).norm() < 1e-10);
  }

  // rank-deficient: log_on_support zeroes the kernel and reports the rank
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  const MatrixFnResult lp =
      matrix_function(LocalOperator(r, 2, proj, true), MatrixFn::log_on_support);
  CHECK(lp.support_rank == 1);
  CHECK(lp.op.matrix().norm() < 1e-14);  // log 1 = 0 on the support, 0 off it
}

TEST_CASE("operator_norm: hermitian and general agree with the svd oracle") {
  const LocalOperator sz(Region::interval(0, 0), 2, pauli::z(), true);
  CHECK(operator_norm(sz) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(LocalOperator::zero(chain(2), 2)) == 0.0);

  for (int rep = 0; rep < 20; ++rep) {
    const Matrix m = oracles::random_matrix(rng, 8);
    const LocalOperator op(chain(3), 2, m);
    Eigen::JacobiSVD<Matrix> svd(m);
    CHECK(operator_norm(op) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
  }
}

TEST_CASE("tensor_product interleaves disjoint supports correctly") {
  const Matrix a = oracles::random_matrix(rng, 2);
  const Matrix b = oracles::random_matrix(rng, 2);
  // supports {0} and {1}: plain kron
  const LocalOperator A(Region::interval(0, 0), 2, a);
  const LocalOperator B(Region::interval(1, 1), 2, b);
  CHECK((tensor_product(A, B).matrix() - oracles::kron(a, b)).norm() < 1e-14);
  // supports {1} and {0}: still canonical site order, so b comes first
  const LocalOperator A2(Region::interval(1, 1), 2, a);
  const LocalOperator B2(Region::interval(0, 0), 2, b);
  CHECK((tensor_product(A2, B2).matrix() - oracles::kron(b, a)).norm() < 1e-14);
  // interleaved: {0,2} x {1}: embed-multiply oracle
  const Matrix c = oracles::random_matrix(rng, 4);
  const LocalOperator C(Region(std::vector<Site>{Site{0}, Site{2}}), 2, c);
  const LocalOperator D(Region::interval(1, 1), 2, b);
  const Matrix expected =
      embed(C, Region::interval(0, 2)).matrix() * embed(D, Region::interval(0, 2)).matrix();
  CHECK((tensor_product(C, D).matrix() - expected).norm() < 1e-12);
}

TEST_CASE("local operator validation") {
  CHECK_THROWS_AS(LocalOperator(chain(2), 2, Matrix::Identity(3, 3)), ValidationError);
  Matrix bad = pauli::x();
  bad(0, 1) += cplx(0, 1e-6);
  CHECK_THROWS_AS(LocalOperator(Region::interval(0, 0), 2, bad, true), ValidationError);
  CHECK_THROWS_AS(Region(std::vector<Site>{Site{0}, Site{0}}), GeometryError);
}
