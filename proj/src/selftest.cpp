#include "qgibbs/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qgibbs/entropy.hpp"
#include "qgibbs/kernels.hpp"
#include "qgibbs/perturbation.hpp"
#include "qgibbs/potential.hpp"

namespace qgibbs {

namespace {

using Rng = std::mt19937_64;

Matrix random_ginibre(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = cplx(gauss(rng), gauss(rng));
  return g;
}

// full rank almost surely
Matrix random_density_matrix(Rng& rng, int dim) {
  const Matrix g = random_ginibre(rng, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

Matrix random_hermitian(Rng& rng, int dim, double scale = 1.0) {
  const Matrix g = random_ginibre(rng, dim);
  Matrix h = 0.5 * (g + g.adjoint());
  return scale * h;
}

Region chain(int n) { return Region::interval(0, n - 1); }

DensityMatrix wrap_density(const Region& r, int site_dim, Matrix m) {
  return DensityMatrix(LocalOperator(r, site_dim, std::move(m), true));
}

// qubit chains sized to hold dims 2,4,8,16; dims are powers of two here
int sites_for_dim(int dim) {
  int k = 0;
  while ((1 << k) < dim) ++k;
  return k;
}

PropertyResult make_result(const std::string& name, bool pass, double worst,
                           const std::string& detail) {
  return PropertyResult{name, pass, worst, detail};
}

}  // namespace

PropertyResult check_klein(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  double min_value = 0.0;
  bool iff_ok = true;
  const int dims[] = {2, 4, 8, 16};
  for (int k = 0; k < pairs; ++k) {
    const int dim = dims[k % 4];
    const Region r = chain(sites_for_dim(dim));
    const DensityMatrix a = wrap_density(r, 2, random_density_matrix(rng, dim));
    const DensityMatrix b = wrap_density(r, 2, random_density_matrix(rng, dim));
    const double s = relative_entropy(a, b);
    min_value = std::min(min_value, s);
    const double td = trace_distance(a, b);
    if ((s < 1e-9) != (td < 1e-9)) iff_ok = false;
    // identical pair: equality case
    const double s0 = relative_entropy(a, a);
    min_value = std::min(min_value, s0);
    if (!(s0 < 1e-9)) iff_ok = false;
  }
  const bool pass = min_value >= -1e-10 && iff_ok;
  std::ostringstream d;
  d << "min S(rho|sigma) = " << min_value << ", equality<->distance agreement: "
    << (iff_ok ? "yes" : "no");
  return make_result("klein_inequality", pass, min_value, d.str());
}

PropertyResult check_ssa_random(std::uint64_t seed, int states) {
  Rng rng(seed);
  const Region abc = chain(3);
  const Region ab = Region::interval(0, 1), bc = Region::interval(1, 2),
               b = Region::interval(1, 1);
  double min_slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < states; ++k) {
    const DensityMatrix rho = wrap_density(abc, 2, random_density_matrix(rng, 8));
    const double slack = von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), ab))) +
                         von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), bc))) -
                         von_neumann_entropy(rho) -
                         von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), b)));
    min_slack = std::min(min_slack, slack);
  }
  std::ostringstream d;
  d << "min SSA slack over " << states << " tripartite states = " << min_slack;
  return make_result("strong_subadditivity_random", min_slack >= -1e-9, min_slack, d.str());
}

PropertyResult check_ssa_model(std::uint64_t seed) {
  (void)seed;
  const Potential pot = transverse_field_ising_potential(1.0, 1.0);
  const StateFamily psi = StateFamily::buffered_gibbs(pot, 0.8, 1);
  const Region abc = chain(6);
  const DensityMatrix rho = psi.marginal(abc);
  double min_slack = std::numeric_limits<double>::infinity();
  const std::pair<int, int> splits[] = {{2, 4}, {1, 3}, {3, 5}};
  for (const auto& [i, j] : splits) {
    const Region ab = Region::interval(0, j - 1);
    const Region bc = Region::interval(i, 5);
    const Region b = Region::interval(i, j - 1);
    const double slack = von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), ab))) +
                         von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), bc))) -
                         von_neumann_entropy(rho) -
                         von_neumann_entropy(DensityMatrix(partial_trace(rho.op(), b)));
    min_slack = std::min(min_slack, slack);
  }
  std::ostringstream d;
  d << "min SSA slack on model marginals = " << min_slack;
  return make_result("strong_subadditivity_model", min_slack >= -1e-9, min_slack, d.str());
}

PropertyResult check_monotonicity(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  const Region big = chain(3), small = Region::interval(0, 1);
  double max_violation = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    const DensityMatrix r1 = wrap_density(big, 2, random_density_matrix(rng, 8));
    const DensityMatrix r2 = wrap_density(big, 2, random_density_matrix(rng, 8));
    const DensityMatrix s1(partial_trace(r1.op(), small));
    const DensityMatrix s2(partial_trace(r2.op(), small));
    // restriction cannot increase the divergence
    const double violation = relative_entropy(s1, s2) - relative_entropy(r1, r2);
    max_violation = std::max(max_violation, violation);
  }
  std::ostringstream d;
  d << "max S(restricted) - S(full) = " << max_violation;
  return make_result("relative_entropy_monotone_restriction", max_violation <= 1e-9,
                     max_violation, d.str());
}

PropertyResult check_adjointness(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  const Region big = chain(3), small = Region::interval(1, 2);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Matrix x = random_ginibre(rng, 8);          // general, not hermitian
    const Matrix b = random_ginibre(rng, 4);
    const LocalOperator X(big, 2, x);
    const LocalOperator B(small, 2, b);
    const cplx lhs = (partial_trace(X, small).matrix() * B.matrix()).trace();
    const cplx rhs = (X.matrix() * embed(B, big).matrix()).trace();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  std::ostringstream d;
  d << "max |Tr(ptrace(X)B) - Tr(X embed(B))| = " << worst;
  return make_result("embed_partial_trace_adjoint", worst <= 1e-10, worst, d.str());
}

PropertyResult check_exp_log_roundtrip(std::uint64_t seed, int states) {
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(2, 4);
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    const int sites = pick(rng);
    const int dim = 1 << sites;
    const Region r = chain(sites);
    const LocalOperator rho(r, 2, random_density_matrix(rng, dim), true);
    const MatrixFnResult lg = matrix_function(rho, MatrixFn::log_on_support);
    const MatrixFnResult back = matrix_function(lg.op, MatrixFn::exp);
    worst = std::max(worst, (back.op.matrix() - rho.matrix()).norm());
  }
  std::ostringstream d;
  d << "max ||exp(log rho) - rho||_F = " << worst;
  return make_result("exp_log_roundtrip", worst <= 1e-10, worst, d.str());
}

PropertyResult check_exp_additivity(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  const Region r = chain(3);
  double worst = 0.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < pairs; ++k) {
    // commuting pair: common random eigenbasis, independent spectra
    const Matrix g = random_ginibre(rng, 8);
    const Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q = qr.householderQ();
    RealVector d1(8), d2(8);
    for (int i = 0; i < 8; ++i) {
      d1(i) = gauss(rng);
      d2(i) = gauss(rng);
    }
    const Matrix a = q * d1.cast<cplx>().asDiagonal() * q.adjoint();
    const Matrix b = q * d2.cast<cplx>().asDiagonal() * q.adjoint();
    const LocalOperator A(r, 2, 0.5 * (a + a.adjoint().eval()), true);
    const LocalOperator B(r, 2, 0.5 * (b + b.adjoint().eval()), true);
    const LocalOperator AB(r, 2, 0.5 * ((a + b) + (a + b).adjoint().eval()), true);
    const Matrix lhs = matrix_function(AB, MatrixFn::exp).op.matrix();
    const Matrix rhs =
        matrix_function(A, MatrixFn::exp).op.matrix() * matrix_function(B, MatrixFn::exp).op.matrix();
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
  }
  std::ostringstream d;
  d << "max rel ||exp(A+B) - exp(A)exp(B)|| (commuting) = " << worst;
  return make_result("exp_additivity_commuting", worst <= 1e-9, worst, d.str());
}

PropertyResult check_ptrace_properties(std::uint64_t seed, int states) {
  Rng rng(seed);
  const Region abc = chain(3), ab = Region::interval(0, 1), a = Region::interval(0, 0);
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    const DensityMatrix rho = wrap_density(abc, 2, random_density_matrix(rng, 8));
    const LocalOperator to_ab = partial_trace(rho.op(), ab);
    worst = std::max(worst, std::abs(to_ab.trace() - cplx(1.0, 0.0)));
    const SpectralDecomposition eig = herm_eig(to_ab);
    worst = std::max(worst, std::max(0.0, -eig.eigenvalues(0)));
    // composition: tracing in two steps equals tracing directly
    const Matrix two_step = partial_trace(to_ab, a).matrix();
    const Matrix direct = partial_trace(rho.op(), a).matrix();
    worst = std::max(worst, (two_step - direct).norm());
  }
  std::ostringstream d;
  d << "max partial-trace defect (trace/positivity/composition) = " << worst;
  return make_result("partial_trace_properties", worst <= 1e-10, worst, d.str());
}

PropertyResult check_pb_gt_random(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  const int dims[] = {4, 8, 16};
  double min_slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    const int dim = dims[k % 3];
    const Region r = chain(sites_for_dim(dim));
    const DensityMatrix rho = wrap_density(r, 2, random_density_matrix(rng, dim));
    const LocalOperator h(r, 2, random_hermitian(rng, dim), true);
    const PbGtResult res = pb_gt_check(rho, h);
    min_slack = std::min({min_slack, res.pb_slack, res.gt_slack, res.norm_lower_slack,
                          res.norm_upper_slack});
  }
  std::ostringstream d;
  d << "min slack over " << pairs << " random (rho,h) pairs = " << min_slack;
  return make_result("peierls_bogolubov_golden_thompson", min_slack >= -1e-10, min_slack,
                     d.str());
}

PropertyResult check_pb_gt_commuting(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Region r = chain(2);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    Matrix rho = Matrix::Zero(4, 4);
    double z = 0.0;
    for (int i = 0; i < 4; ++i) {
      rho(i, i) = uni(rng);
      z += rho(i, i).real();
    }
    rho /= z;
    Matrix h = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) h(i, i) = gauss(rng);
    const PbGtResult res =
        pb_gt_check(wrap_density(r, 2, rho), LocalOperator(r, 2, h, true));
    worst = std::max({worst, std::abs(res.pb_slack), res.gt_slack});
    // h = 0: both slacks vanish identically
    const PbGtResult zero =
        pb_gt_check(wrap_density(r, 2, rho), LocalOperator::zero(r, 2));
    worst = std::max({worst, std::abs(zero.pb_slack), std::abs(zero.gt_slack)});
  }
  std::ostringstream d;
  d << "max |slack| in commuting cases = " << worst;
  return make_result("pb_gt_commuting_equality", worst <= 1e-10, worst, d.str());
}

PropertyResult check_perturb_involution(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  const int dims[] = {4, 8};
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const int dim = dims[k % 2];
    const Region r = chain(sites_for_dim(dim));
    const DensityMatrix rho = wrap_density(r, 2, random_density_matrix(rng, dim));
    const LocalOperator h(r, 2, random_hermitian(rng, dim), true);
    const PerturbResult fwd = perturb(rho, h);
    // unnormalized level: e^{log(e^{log rho + h}) - h} = rho
    const MatrixFnResult log_mid = matrix_function(fwd.unnormalized, MatrixFn::log_on_support);
    const LocalOperator back_exp(r, 2, log_mid.op.matrix() - h.matrix(), true);
    const Matrix recovered = matrix_function(back_exp, MatrixFn::exp).op.matrix();
    worst = std::max(worst, (recovered - rho.matrix()).norm());
  }
  std::ostringstream d;
  d << "max ||psi^{h,-h} - psi|| = " << worst;
  return make_result("perturbation_involution", worst <= 1e-9, worst, d.str());
}

PropertyResult check_eig_reconstruction(std::uint64_t seed, int states) {
  Rng rng(seed);
  const Region r = chain(4);
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    const LocalOperator a(r, 2, random_hermitian(rng, 16, 2.0), true);
    const SpectralDecomposition eig = herm_eig(a);
    const Matrix rebuilt = eig.eigenvectors *
                           eig.eigenvalues.cast<cplx>().asDiagonal() *
                           eig.eigenvectors.adjoint();
    const double scale = std::max(1.0, a.matrix().norm());
    worst = std::max(worst, (rebuilt - a.matrix()).norm() / scale);
    worst = std::max(worst,
                     (eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(16, 16))
                         .norm());
  }
  std::ostringstream d;
  d << "max reconstruction/unitarity defect over 16x16 = " << worst;
  return make_result("herm_eig_reconstruction", worst <= 1e-10, worst, d.str());
}

PropertyResult check_kernel_equivalence(std::uint64_t seed) {
  Rng rng(seed);
  if (!kernels::avx2_supported())
    return make_result("kernel_equivalence", true, 0.0, "avx2 unavailable; scalar only");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto& sc = kernels::ops_for(kernels::Isa::scalar);
  const auto& vx = kernels::ops_for(kernels::Isa::avx2);
  double worst = 0.0;
  for (const std::size_t n : {1ul, 3ul, 8ul, 65ul, 1024ul, 4097ul}) {
    std::vector<double> xd(n), yd1(n), yd2(n);
    std::vector<kernels::cplx> xz(n), yz1(n), yz2(n);
    for (std::size_t i = 0; i < n; ++i) {
      xd[i] = gauss(rng);
      yd1[i] = yd2[i] = gauss(rng);
      xz[i] = {gauss(rng), gauss(rng)};
      yz1[i] = yz2[i] = kernels::cplx(gauss(rng), gauss(rng));
    }
    const double a = gauss(rng);
    const kernels::cplx az{gauss(rng), gauss(rng)};
    sc.axpy_d(a, xd.data(), yd1.data(), n);
    vx.axpy_d(a, xd.data(), yd2.data(), n);
    sc.axpy_z(az, xz.data(), yz1.data(), n);
    vx.axpy_z(az, xz.data(), yz2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(yd1[i] - yd2[i]));
      worst = std::max(worst, std::abs(yz1[i] - yz2[i]));
    }
    worst = std::max(worst, std::abs(sc.dot_d(xd.data(), yd1.data(), n) -
                                     vx.dot_d(xd.data(), yd1.data(), n)) /
                                std::max(1.0, std::abs(sc.dot_d(xd.data(), yd1.data(), n))));
    worst = std::max(worst, std::abs(sc.dotc_z(xz.data(), yz1.data(), n) -
                                     vx.dotc_z(xz.data(), yz1.data(), n)) /
                                std::max(1.0, std::abs(sc.dotc_z(xz.data(), yz1.data(), n))));
    const std::size_t stride = 3;
    std::vector<double> big(n * stride + 1);
    for (auto& v : big) v = gauss(rng);
    worst = std::max(worst, std::abs(sc.sum_stride_d(big.data(), stride, n) -
                                     vx.sum_stride_d(big.data(), stride, n)) /
                                std::max(1.0, std::abs(sc.sum_stride_d(big.data(), stride, n))));
    std::vector<double> g1(n), g2(n);
    sc.gather_d(big.data(), stride, g1.data(), n);
    vx.gather_d(big.data(), stride, g2.data(), n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(g1[i] - g2[i]));
  }
  std::ostringstream d;
  d << "max scalar-vs-avx2 deviation = " << worst;
  return make_result("kernel_equivalence", worst <= 1e-12, worst, d.str());
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  out.push_back(check_kernel_equivalence(seed + 0));
  out.push_back(check_eig_reconstruction(seed + 1));
  out.push_back(check_adjointness(seed + 2));
  out.push_back(check_ptrace_properties(seed + 3));
  out.push_back(check_exp_log_roundtrip(seed + 4));
  out.push_back(check_exp_additivity(seed + 5));
  out.push_back(check_klein(seed + 6));
  out.push_back(check_ssa_random(seed + 7));
  out.push_back(check_ssa_model(seed + 8));
  out.push_back(check_monotonicity(seed + 9));
  out.push_back(check_pb_gt_random(seed + 10));
  out.push_back(check_pb_gt_commuting(seed + 11));
  out.push_back(check_perturb_involution(seed + 12));
  return out;
}

}  // namespace qgibbs
