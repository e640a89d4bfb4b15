#include "qgibbs/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <lapacke.h>

#include "qgibbs/errors.hpp"
#include "qgibbs/indexing.hpp"
#include "qgibbs/kernels.hpp"
#include "qgibbs/sysmem.hpp"

namespace qgibbs {

namespace {

bool matrix_is_real(const Matrix& m) {
  const cplx* p = m.data();
  const std::size_t n = static_cast<std::size_t>(m.size());
  for (std::size_t i = 0; i < n; ++i)
    if (p[i].imag() != 0.0) return false;
  return true;
}

bool matrix_is_diagonal(const Matrix& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
  return true;
}

void lapack_check(int info, const char* routine) {
  if (info != 0) {
    std::ostringstream os;
    os << routine << " failed with info=" << info;
    throw Error(os.str());
  }
}

// Ascending eigensystem of an exactly diagonal matrix: sort the diagonal,
// eigenvectors are the matching permutation of basis vectors. Stable sort
// keeps the path deterministic under degeneracies.
void diagonal_eig(const Matrix& b, RealVector& evals, Matrix& evecs) {
  const Eigen::Index n = b.rows();
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index i, Eigen::Index j) {
    return b(i, i).real() < b(j, j).real();
  });
  evals.resize(n);
  evecs = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    evals(k) = b(perm[k], perm[k]).real();
    evecs(perm[k], k) = 1.0;
  }
}

void real_eig(const Matrix& b, RealVector& evals, Matrix& evecs) {
  const lapack_int n = static_cast<lapack_int>(b.rows());
  RealMatrix a = b.real();
  RealMatrix z(n, n);
  evals.resize(n);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int m = 0;
  const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n,
                                  0.0, 0.0, 0, 0, 0.0, &m, evals.data(), z.data(), n,
                                  isuppz.data());
  lapack_check(info, "dsyevr");
  evecs = z.cast<cplx>();
}

void complex_eig(const Matrix& b, RealVector& evals, Matrix& evecs) {
  const lapack_int n = static_cast<lapack_int>(b.rows());
  Matrix a = b;
  evecs.resize(n, n);
  evals.resize(n);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int m = 0;
  const int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n,
                                  0.0, 0.0, 0, 0, 0.0, &m, evals.data(), evecs.data(),
                                  n, isuppz.data());
  lapack_check(info, "zheevr");
}

Eigen::Index rank_above(const RealVector& evals, double cutoff) {
  double norm = 0.0;
  if (evals.size() > 0)
    norm = std::max(std::abs(evals(0)), std::abs(evals(evals.size() - 1)));
  const double thr = cutoff * std::max(1.0, norm);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals(i) > thr) ++r;
  return r;
}

}  // namespace

LocalOperator embed(const LocalOperator& op, const Region& ambient) {
  if (!op.support().empty() && op.support().dimension() != ambient.dimension())
    throw ContainmentError("embed: lattice dimension mismatch");
  const std::size_t dim = checked_dimension(op.site_dim(), ambient.volume(),
                                            "embed into " + ambient.to_string());
  if (dim >= 4096)
    check_memory_budget(dim * dim * sizeof(cplx),
                        "embed into " + ambient.to_string());
  const auto positions = site_positions(op.support(), ambient, "embed");
  const SiteIndexer idx(ambient.volume(), op.site_dim());
  Matrix out = Matrix::Zero(dim, dim);
  detail::add_embedded(op.matrix().data(), static_cast<std::size_t>(op.dim()),
                       positions, idx, out.data());
  return LocalOperator(ambient, op.site_dim(), std::move(out), op.hermitian_flagged());
}

LocalOperator partial_trace(const LocalOperator& op, const Region& keep) {
  const auto keep_positions = site_positions(keep, op.support(), "partial_trace");
  const SiteIndexer idx(op.support().volume(), op.site_dim());
  const std::size_t keep_dim = checked_dimension(op.site_dim(), keep.volume(), "partial_trace");
  Matrix out(keep_dim, keep_dim);
  detail::partial_trace_into(op.matrix().data(), idx, keep_positions, out.data());
  return LocalOperator(keep, op.site_dim(), std::move(out), op.hermitian_flagged());
}

SpectralDecomposition herm_eig(const LocalOperator& op, double support_cutoff) {
  if (!op.hermitian_flagged())
    throw ValidationError("herm_eig requires a hermitian-flagged operator");
  if (support_cutoff < 0.0)
    throw ValidationError("support cutoff must be >= 0");
  // symmetrize to suppress accumulated round-off before factorizing
  Matrix b = 0.5 * (op.matrix() + op.matrix().adjoint());
  const Eigen::Index n = b.rows();
  SpectralDecomposition out;
  if (n == 1) {
    out.eigenvalues = RealVector::Constant(1, b(0, 0).real());
    out.eigenvectors = Matrix::Identity(1, 1);
  } else if (matrix_is_diagonal(b)) {
    diagonal_eig(b, out.eigenvalues, out.eigenvectors);
  } else if (matrix_is_real(b)) {
    if (n >= 2048)
      check_memory_budget(2 * static_cast<std::size_t>(n) * n * sizeof(double),
                          "herm_eig (real)");
    real_eig(b, out.eigenvalues, out.eigenvectors);
  } else {
    if (n >= 2048)
      check_memory_budget(2 * static_cast<std::size_t>(n) * n * sizeof(cplx),
                          "herm_eig (complex)");
    complex_eig(b, out.eigenvalues, out.eigenvectors);
  }
  out.support_rank = rank_above(out.eigenvalues, support_cutoff);
  return out;
}

MatrixFnResult matrix_function(const LocalOperator& op, MatrixFn fn, double support_cutoff) {
  const SpectralDecomposition eig = herm_eig(op, support_cutoff);
  const Eigen::Index n = eig.eigenvalues.size();
  const double thr = support_cutoff * std::max(1.0, eig.spectral_norm());

  RealVector f(n);
  Eigen::Index rank = n;
  if (fn == MatrixFn::exp) {
    for (Eigen::Index i = 0; i < n; ++i) f(i) = std::exp(eig.eigenvalues(i));
  } else {
    rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ev = eig.eigenvalues(i);
      if (ev < -thr) {
        std::ostringstream os;
        os << "log_on_support: eigenvalue " << ev << " below -" << thr;
        throw DomainError(os.str());
      }
      if (ev > thr) {
        f(i) = std::log(ev);
        ++rank;
      } else {
        f(i) = 0.0;  // off-support subspace
      }
    }
  }

  Matrix scaled = eig.eigenvectors;
  for (Eigen::Index j = 0; j < n; ++j)
    kernels::scale(cplx(f(j), 0.0), scaled.col(j).data(), static_cast<std::size_t>(n));
  Matrix result = scaled * eig.eigenvectors.adjoint();
  result = 0.5 * (result + result.adjoint().eval());
  return MatrixFnResult{op.with_matrix(std::move(result)), rank};
}

double operator_norm(const LocalOperator& op) {
  if (op.dim() == 1) return std::abs(op.matrix()(0, 0));
  if (op.hermitian_flagged()) return herm_eig(op).spectral_norm();
  Eigen::BDCSVD<Matrix> svd(op.matrix());
  return svd.singularValues()(0);
}

}  // namespace qgibbs
