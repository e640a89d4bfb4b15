#include "qgibbs/gibbs_engine.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/indexing.hpp"
#include "qgibbs/kernels.hpp"
#include "qgibbs/sysmem.hpp"

namespace qgibbs {

namespace {

void lapack_check(int info, const char* routine) {
  if (info != 0) {
    std::ostringstream os;
    os << routine << " failed with info=" << info;
    throw Error(os.str());
  }
}

// true when the offsets form an arithmetic progression (unit-stride gather)
bool uniform_stride(const std::vector<std::size_t>& offs, std::size_t& stride) {
  if (offs.size() < 2) {
    stride = 1;
    return true;
  }
  stride = offs[1] - offs[0];
  for (std::size_t i = 1; i + 1 < offs.size(); ++i)
    if (offs[i + 1] - offs[i] != stride) return false;
  return stride > 0;
}

}  // namespace

struct GibbsEngine::Impl {
  enum class Mode { diagonal, real, complex_ } mode = Mode::real;
  std::size_t dim = 0;

  RealVector diag;  // diagonal mode: U's diagonal, unsorted

  RealMatrix u_real;
  Matrix u_cplx;
  bool matrix_built = false;

  RealVector evals;
  bool evals_ready = false;

  RealMatrix vec_real;
  Matrix vec_cplx;
  bool vecs_ready = false;

  double logz = 0.0;
  bool logz_ready = false;
};

GibbsEngine::GibbsEngine(const Potential& pot, double beta, Region region, Boundary bc)
    : impl_(std::make_unique<Impl>()), pot_(pot), beta_(beta), region_(std::move(region)),
      bc_(bc) {
  if (beta_ < 0.0) throw ValidationError("gibbs engine: beta must be >= 0");
  if (region_.empty()) throw GeometryError("gibbs engine: empty region");
  if (region_.dimension() != pot_.dimension())
    throw GeometryError("gibbs engine: region dimension does not match the potential");
  impl_->dim = checked_dimension(pot_.site_dim(), region_.volume(),
                                 "gibbs state on " + region_.to_string());
  impl_->mode = pot_.is_diagonal() ? Impl::Mode::diagonal
              : pot_.is_real()     ? Impl::Mode::real
                                   : Impl::Mode::complex_;
  if (impl_->mode == Impl::Mode::diagonal) {
    impl_->diag = RealVector::Zero(impl_->dim);
    detail::accumulate_internal_energy_diagonal(pot_, region_, impl_->diag.data(), impl_->dim,
                                                bc_ == Boundary::periodic);
    impl_->evals = impl_->diag;
    std::sort(impl_->evals.data(), impl_->evals.data() + impl_->evals.size());
    impl_->evals_ready = true;
  }
}

GibbsEngine::~GibbsEngine() = default;

namespace {

constexpr std::size_t kGuardDim = 2048;  // below this, skip /proc queries

template <typename Mat, typename Scalar>
void build_dense(const Potential& pot, const Region& region, bool periodic, std::size_t dim,
                 Mat& u) {
  u = Mat::Zero(dim, dim);
  detail::accumulate_internal_energy<Scalar>(pot, region, u.data(), dim, periodic);
}

}  // namespace

const RealVector& GibbsEngine::energy_eigenvalues() {
  Impl& im = *impl_;
  if (im.evals_ready) return im.evals;
  const std::size_t d = im.dim;
  const bool periodic = bc_ == Boundary::periodic;
  const lapack_int n = static_cast<lapack_int>(d);
  std::vector<lapack_int> isuppz(2 * d);
  lapack_int m = 0;
  im.evals.resize(n);
  if (im.mode == Impl::Mode::real) {
    if (d >= kGuardDim)
      check_memory_budget(d * d * sizeof(double),
                          "energy spectrum on " + region_.to_string());
    if (!im.matrix_built) build_dense<RealMatrix, double>(pot_, region_, periodic, d, im.u_real);
    double zdummy = 0.0;
    const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'A', 'L', n, im.u_real.data(), n,
                                    0.0, 0.0, 0, 0, 0.0, &m, im.evals.data(), &zdummy, 1,
                                    isuppz.data());
    lapack_check(info, "dsyevr");
    im.u_real.resize(0, 0);  // destroyed by the factorization
  } else {
    if (d >= kGuardDim)
      check_memory_budget(d * d * sizeof(cplx),
                          "energy spectrum on " + region_.to_string());
    if (!im.matrix_built) build_dense<Matrix, cplx>(pot_, region_, periodic, d, im.u_cplx);
    cplx zdummy = 0.0;
    const int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'A', 'L', n, im.u_cplx.data(), n,
                                    0.0, 0.0, 0, 0, 0.0, &m, im.evals.data(), &zdummy, 1,
                                    isuppz.data());
    lapack_check(info, "zheevr");
    im.u_cplx.resize(0, 0);
  }
  im.matrix_built = false;
  im.evals_ready = true;
  return im.evals;
}

void GibbsEngine::ensure_vectors() {
  Impl& im = *impl_;
  if (im.vecs_ready || im.mode == Impl::Mode::diagonal) return;
  const std::size_t d = im.dim;
  const bool periodic = bc_ == Boundary::periodic;
  const lapack_int n = static_cast<lapack_int>(d);
  std::vector<lapack_int> isuppz(2 * d);
  lapack_int m = 0;
  im.evals.resize(n);
  if (im.mode == Impl::Mode::real) {
    if (d >= kGuardDim)
      check_memory_budget(2 * d * d * sizeof(double),
                          "gibbs eigenvectors on " + region_.to_string());
    build_dense<RealMatrix, double>(pot_, region_, periodic, d, im.u_real);
    im.vec_real.resize(n, n);
    const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, im.u_real.data(), n,
                                    0.0, 0.0, 0, 0, 0.0, &m, im.evals.data(),
                                    im.vec_real.data(), n, isuppz.data());
    lapack_check(info, "dsyevr");
    im.u_real.resize(0, 0);
  } else {
    if (d >= kGuardDim)
      check_memory_budget(2 * d * d * sizeof(cplx),
                          "gibbs eigenvectors on " + region_.to_string());
    build_dense<Matrix, cplx>(pot_, region_, periodic, d, im.u_cplx);
    im.vec_cplx.resize(n, n);
    const int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, im.u_cplx.data(), n,
                                    0.0, 0.0, 0, 0, 0.0, &m, im.evals.data(),
                                    im.vec_cplx.data(), n, isuppz.data());
    lapack_check(info, "zheevr");
    im.u_cplx.resize(0, 0);
  }
  im.matrix_built = false;
  im.evals_ready = true;
  im.vecs_ready = true;
}

double GibbsEngine::log_partition() {
  Impl& im = *impl_;
  if (im.logz_ready) return im.logz;
  const RealVector& ev = energy_eigenvalues();
  const double e0 = ev(0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::exp(-beta_ * (ev(i) - e0));
  im.logz = -beta_ * e0 + std::log(s);
  im.logz_ready = true;
  return im.logz;
}

double GibbsEngine::energy_mean() {
  const RealVector& ev = energy_eigenvalues();
  const double e0 = ev(0);
  double z = 0.0, acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double w = std::exp(-beta_ * (ev(i) - e0));
    z += w;
    acc += w * ev(i);
  }
  return acc / z;
}

LocalOperator GibbsEngine::density() {
  Impl& im = *impl_;
  const std::size_t d = im.dim;
  if (d >= kGuardDim)
    check_memory_budget(d * d * sizeof(cplx), "gibbs density on " + region_.to_string());
  if (im.mode == Impl::Mode::diagonal) {
    const double e0 = im.evals(0);
    Matrix rho = Matrix::Zero(d, d);
    double z = 0.0;
    for (std::size_t i = 0; i < d; ++i) z += std::exp(-beta_ * (im.diag(i) - e0));
    for (std::size_t i = 0; i < d; ++i)
      rho(i, i) = std::exp(-beta_ * (im.diag(i) - e0)) / z;
    return LocalOperator(region_, pot_.site_dim(), std::move(rho), true);
  }
  ensure_vectors();
  const double e0 = im.evals(0);
  double z = 0.0;
  for (Eigen::Index i = 0; i < im.evals.size(); ++i)
    z += std::exp(-beta_ * (im.evals(i) - e0));
  if (im.mode == Impl::Mode::real) {
    RealMatrix x = im.vec_real;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      kernels::scale(std::sqrt(std::exp(-beta_ * (im.evals(j) - e0)) / z), x.col(j).data(), d);
    RealMatrix rho = RealMatrix::Zero(d, d);
    cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, static_cast<int>(d),
                static_cast<int>(d), 1.0, x.data(), static_cast<int>(d), 0.0, rho.data(),
                static_cast<int>(d));
    rho.triangularView<Eigen::StrictlyUpper>() = rho.transpose();
    return LocalOperator(region_, pot_.site_dim(), rho.cast<cplx>(), true);
  }
  Matrix x = im.vec_cplx;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    kernels::scale(cplx(std::sqrt(std::exp(-beta_ * (im.evals(j) - e0)) / z), 0.0),
                   x.col(j).data(), d);
  Matrix rho = Matrix::Zero(d, d);
  cblas_zherk(CblasColMajor, CblasLower, CblasNoTrans, static_cast<int>(d),
              static_cast<int>(d), 1.0, x.data(), static_cast<int>(d), 0.0, rho.data(),
              static_cast<int>(d));
  rho.triangularView<Eigen::StrictlyUpper>() = rho.adjoint();
  return LocalOperator(region_, pot_.site_dim(), std::move(rho), true);
}

LocalOperator GibbsEngine::marginal_onto(const Region& inner) {
  Impl& im = *impl_;
  if (inner == region_) return density();
  const auto keep_positions = site_positions(inner, region_, "gibbs marginal");
  const SiteIndexer idx(region_.volume(), pot_.site_dim());
  const std::size_t keep_dim = checked_dimension(pot_.site_dim(), inner.volume(),
                                                 "gibbs marginal");
  const auto keep_offs = idx.subspace_offsets(keep_positions);
  std::vector<std::size_t> traced_positions;
  for (std::size_t p = 0, k = 0; p < idx.n_sites(); ++p) {
    if (k < keep_positions.size() && keep_positions[k] == p) {
      ++k;
    } else {
      traced_positions.push_back(p);
    }
  }
  const auto env_offs = idx.subspace_offsets(traced_positions);
  const std::size_t d = im.dim;

  if (im.mode == Impl::Mode::diagonal) {
    const double e0 = im.evals(0);
    double z = 0.0;
    for (std::size_t i = 0; i < d; ++i) z += std::exp(-beta_ * (im.diag(i) - e0));
    Matrix rho = Matrix::Zero(keep_dim, keep_dim);
    for (std::size_t a = 0; a < keep_dim; ++a) {
      double s = 0.0;
      for (const std::size_t e : env_offs)
        s += std::exp(-beta_ * (im.diag(keep_offs[a] + e) - e0));
      rho(a, a) = s / z;
    }
    return LocalOperator(inner, pot_.site_dim(), std::move(rho), true);
  }

  ensure_vectors();
  const double e0 = im.evals(0);
  double z = 0.0;
  for (Eigen::Index i = 0; i < im.evals.size(); ++i)
    z += std::exp(-beta_ * (im.evals(i) - e0));

  std::size_t keep_stride = 0;
  const bool keep_uniform = uniform_stride(keep_offs, keep_stride);

  if (im.mode == Impl::Mode::real) {
    check_memory_budget(keep_dim * d * sizeof(double) + d * d * sizeof(double),
                        "gibbs marginal buffers");
    // consume the eigenvector matrix: scale columns by sqrt of the weights
    RealMatrix& x = im.vec_real;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      kernels::scale(std::sqrt(std::exp(-beta_ * (im.evals(j) - e0))), x.col(j).data(), d);
    im.vecs_ready = false;
    RealMatrix acc = RealMatrix::Zero(keep_dim, keep_dim);
    RealMatrix y(keep_dim, d);
    for (const std::size_t e : env_offs) {
      for (std::size_t j = 0; j < d; ++j) {
        const double* col = x.data() + j * d + e;
        if (keep_uniform) {
          kernels::gather(col + keep_offs[0], keep_stride, y.col(j).data(), keep_dim);
        } else {
          double* out = y.col(j).data();
          for (std::size_t a = 0; a < keep_dim; ++a) out[a] = col[keep_offs[a]];
        }
      }
      cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, static_cast<int>(keep_dim),
                  static_cast<int>(d), 1.0, y.data(), static_cast<int>(keep_dim), 1.0,
                  acc.data(), static_cast<int>(keep_dim));
    }
    x.resize(0, 0);
    acc /= z;
    acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
    return LocalOperator(inner, pot_.site_dim(), acc.cast<cplx>(), true);
  }

  check_memory_budget(keep_dim * d * sizeof(cplx) + d * d * sizeof(cplx),
                      "gibbs marginal buffers");
  Matrix& x = im.vec_cplx;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    kernels::scale(cplx(std::sqrt(std::exp(-beta_ * (im.evals(j) - e0))), 0.0),
                   x.col(j).data(), d);
  im.vecs_ready = false;
  Matrix acc = Matrix::Zero(keep_dim, keep_dim);
  Matrix y(keep_dim, d);
  for (const std::size_t e : env_offs) {
    for (std::size_t j = 0; j < d; ++j) {
      const cplx* col = x.data() + j * d + e;
      if (keep_uniform) {
        kernels::gather(col + keep_offs[0], keep_stride, y.col(j).data(), keep_dim);
      } else {
        cplx* out = y.col(j).data();
        for (std::size_t a = 0; a < keep_dim; ++a) out[a] = col[keep_offs[a]];
      }
    }
    cblas_zherk(CblasColMajor, CblasLower, CblasNoTrans, static_cast<int>(keep_dim),
                static_cast<int>(d), 1.0, y.data(), static_cast<int>(keep_dim), 1.0,
                acc.data(), static_cast<int>(keep_dim));
  }
  x.resize(0, 0);
  acc /= z;
  acc.triangularView<Eigen::StrictlyUpper>() = acc.adjoint();
  return LocalOperator(inner, pot_.site_dim(), std::move(acc), true);
}

}  // namespace qgibbs
