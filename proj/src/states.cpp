#include "qgibbs/states.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/sysmem.hpp"

namespace qgibbs {

DensityMatrix::DensityMatrix(LocalOperator op) : op_(std::move(op)) {
  if (!op_.hermitian_flagged())
    throw ValidationError("density matrix must be hermitian-flagged");
  const double tr_dev = std::abs(op_.trace() - cplx(1.0, 0.0));
  if (tr_dev > 1e-12) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << tr_dev;
    throw ValidationError(os.str());
  }
  spec_ = std::make_shared<SpectralDecomposition>(herm_eig(op_));
  if (spec_->eigenvalues(0) < -1e-12) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << spec_->eigenvalues(0);
    throw ValidationError(os.str());
  }
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.support() == b.support()) || a.site_dim() != b.site_dim())
    throw ValidationError("trace distance requires states on the same support");
  LocalOperator diff = a.op().with_matrix(a.matrix() - b.matrix());
  const SpectralDecomposition eig = herm_eig(diff);
  return 0.5 * eig.eigenvalues.cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// StateFamily
// ---------------------------------------------------------------------------

struct StateFamily::MarginalCache {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const DensityMatrix>> entries;
};

StateFamily::StateFamily() : cache_(std::make_shared<MarginalCache>()) {}

StateFamily StateFamily::product(const Matrix& rho0, int site_dim, int nu) {
  if (rho0.rows() != site_dim || rho0.cols() != site_dim)
    throw ValidationError("product state: rho0 must be site_dim x site_dim");
  // validate through the single-site constructor
  Region origin(std::vector<Site>{Site(static_cast<std::size_t>(nu), 0)});
  DensityMatrix check(LocalOperator(origin, site_dim, rho0, true));
  (void)check;
  StateFamily f;
  f.kind_ = StateKind::product;
  f.site_dim_ = site_dim;
  f.nu_ = nu;
  f.rho0_ = rho0;
  return f;
}

StateFamily StateFamily::tracial(int site_dim, int nu) {
  StateFamily f;
  f.kind_ = StateKind::tracial;
  f.site_dim_ = site_dim;
  f.nu_ = nu;
  return f;
}

StateFamily StateFamily::internal_gibbs(Potential pot, double beta, Boundary bc) {
  if (beta < 0.0) throw ValidationError("internal_gibbs: beta must be >= 0");
  StateFamily f;
  f.kind_ = StateKind::internal_gibbs;
  f.site_dim_ = pot.site_dim();
  f.nu_ = pot.dimension();
  f.beta_ = beta;
  f.bc_ = bc;
  f.pot_ = std::move(pot);
  return f;
}

StateFamily StateFamily::buffered_gibbs(Potential pot, double beta, int buffer, Boundary bc) {
  if (beta < 0.0) throw ValidationError("buffered_gibbs: beta must be >= 0");
  if (buffer < 0) throw ValidationError("buffered_gibbs: buffer must be >= 0");
  StateFamily f;
  f.kind_ = StateKind::buffered_gibbs;
  f.site_dim_ = pot.site_dim();
  f.nu_ = pot.dimension();
  f.beta_ = beta;
  f.buffer_ = buffer;
  f.bc_ = bc;
  f.pot_ = std::move(pot);
  return f;
}

std::string StateFamily::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case StateKind::product: os << "product"; break;
    case StateKind::tracial: os << "tracial"; break;
    case StateKind::internal_gibbs: os << "internal_gibbs(beta=" << beta_ << ")"; break;
    case StateKind::buffered_gibbs:
      os << "buffered_gibbs(beta=" << beta_ << ",b=" << buffer_ << ")";
      break;
  }
  return os.str();
}

namespace {

// tensor power of a single-site density, first site most significant
Matrix product_density(const Matrix& rho0, std::size_t volume, std::size_t dim) {
  Matrix cur = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < volume; ++k) {
    const Eigen::Index dc = cur.rows();
    const Eigen::Index dn = dc * rho0.rows();
    Matrix next(dn, dn);
    for (Eigen::Index i = 0; i < dc; ++i)
      for (Eigen::Index j = 0; j < dc; ++j)
        next.block(i * rho0.rows(), j * rho0.rows(), rho0.rows(), rho0.rows()) =
            cur(i, j) * rho0;
    cur = std::move(next);
  }
  if (static_cast<std::size_t>(cur.rows()) != dim)
    throw Error("product density dimension mismatch");
  return cur;
}

}  // namespace

DensityMatrix StateFamily::compute_marginal(const Region& region, int buffer_override) const {
  if (region.empty()) throw GeometryError("marginal of empty region");
  if (region.dimension() != nu_)
    throw GeometryError("marginal: region dimension mismatch");
  const std::size_t dim =
      checked_dimension(site_dim_, region.volume(), "marginal on " + region.to_string());
  switch (kind_) {
    case StateKind::tracial: {
      Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
      return DensityMatrix(LocalOperator(region, site_dim_, std::move(m), true));
    }
    case StateKind::product: {
      if (dim >= 2048)
        check_memory_budget(dim * dim * sizeof(cplx), "product marginal");
      return DensityMatrix(
          LocalOperator(region, site_dim_, product_density(rho0_, region.volume(), dim), true));
    }
    case StateKind::internal_gibbs: {
      GibbsEngine engine(*pot_, beta_, region, bc_);
      return DensityMatrix(engine.density());
    }
    case StateKind::buffered_gibbs: {
      const int b = buffer_override >= 0 ? buffer_override : buffer_;
      const Region enlarged = region.enlarged(b);
      GibbsEngine engine(*pot_, beta_, enlarged, bc_);
      return DensityMatrix(engine.marginal_onto(region));
    }
  }
  throw Error("unreachable state kind");
}

DensityMatrix StateFamily::cached_marginal(const Region& region, int buffer_override) const {
  const int effective_buffer =
      (kind_ == StateKind::buffered_gibbs && buffer_override < 0) ? buffer_ : buffer_override;
  std::ostringstream key;
  key << region.to_string() << "|b=" << effective_buffer;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->entries.find(key.str());
    if (it != cache_->entries.end()) return *it->second;
  }
  DensityMatrix m = compute_marginal(region, buffer_override);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto [it, inserted] = cache_->entries.emplace(
      key.str(), std::make_shared<const DensityMatrix>(std::move(m)));
  (void)inserted;
  return *it->second;
}

DensityMatrix StateFamily::marginal(const Region& region) const {
  return cached_marginal(region, -1);
}

double StateFamily::buffered_drift(const Region& region, int b1, int b2) const {
  if (kind_ != StateKind::buffered_gibbs)
    throw ValidationError("buffered_drift requires a buffered_gibbs family");
  if (b1 < 0 || b2 < 0) throw ValidationError("buffered_drift: buffers must be >= 0");
  if (b1 > b2) std::swap(b1, b2);
  if (b1 == b2) return 0.0;
  const DensityMatrix m1 = cached_marginal(region, b1);
  const DensityMatrix m2 = cached_marginal(region, b2);
  return trace_distance(m1, m2);
}

}  // namespace qgibbs
