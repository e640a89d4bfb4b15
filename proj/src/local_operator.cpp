#include "qgibbs/local_operator.hpp"

#include <atomic>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/indexing.hpp"
#include "qgibbs/kernels.hpp"

namespace qgibbs {

namespace {
std::atomic<std::size_t> g_dimension_cap{1u << 16};
}

std::size_t dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(std::size_t cap) {
  if (cap < 2) throw ValidationError("dimension cap must be >= 2");
  g_dimension_cap.store(cap);
}

std::size_t checked_dimension(int site_dim, std::size_t volume, const std::string& what) {
  const std::size_t cap = dimension_cap();
  std::size_t d = 1;
  for (std::size_t k = 0; k < volume; ++k) {
    if (d > cap / static_cast<std::size_t>(site_dim)) {
      std::ostringstream os;
      os << what << ": dimension " << site_dim << "^" << volume
         << " exceeds the configured cap " << cap;
      throw ResourceError(os.str());
    }
    d *= static_cast<std::size_t>(site_dim);
  }
  return d;
}

LocalOperator::LocalOperator(Region support, int site_dim, Matrix matrix, bool hermitian)
    : support_(std::move(support)), site_dim_(site_dim), matrix_(std::move(matrix)),
      hermitian_(hermitian) {
  if (site_dim_ < 2) throw ValidationError("site dimension must be >= 2");
  if (matrix_.rows() != matrix_.cols())
    throw ValidationError("local operator matrix must be square");
  const std::size_t want = checked_dimension(site_dim_, support_.volume(), "local operator");
  if (static_cast<std::size_t>(matrix_.rows()) != want) {
    std::ostringstream os;
    os << "matrix dimension " << matrix_.rows() << " != site_dim^|support| = " << want;
    throw ValidationError(os.str());
  }
  if (hermitian_) {
    const double scale = std::max(1e-300, matrix_.norm());
    const double dev = (matrix_ - matrix_.adjoint()).norm();
    if (dev > 1e-12 * scale)
      throw ValidationError("operator flagged hermitian but ||A - A*|| = " +
                            std::to_string(dev) + " exceeds 1e-12 * ||A||");
  }
}

LocalOperator LocalOperator::zero(Region support, int site_dim, bool hermitian) {
  const std::size_t d = checked_dimension(site_dim, support.volume(), "zero operator");
  return LocalOperator(std::move(support), site_dim, Matrix::Zero(d, d), hermitian);
}

LocalOperator LocalOperator::identity(Region support, int site_dim) {
  const std::size_t d = checked_dimension(site_dim, support.volume(), "identity operator");
  return LocalOperator(std::move(support), site_dim, Matrix::Identity(d, d), true);
}

bool LocalOperator::is_real() const {
  const cplx* p = matrix_.data();
  const std::size_t count = static_cast<std::size_t>(matrix_.size());
  for (std::size_t i = 0; i < count; ++i)
    if (p[i].imag() != 0.0) return false;
  return true;
}

LocalOperator LocalOperator::with_matrix(Matrix m) const {
  return LocalOperator(support_, site_dim_, std::move(m), hermitian_);
}

cplx trace_product(const LocalOperator& a, const LocalOperator& b) {
  if (!(a.support() == b.support()) || a.site_dim() != b.site_dim())
    throw ContainmentError("trace_product requires operators on the same support");
  const std::size_t count = static_cast<std::size_t>(a.matrix().size());
  // Tr(AB) = sum_ij A_ij B_ji; with a hermitian factor this collapses to a
  // conjugated dot over the flat storage.
  if (b.hermitian_flagged())
    return kernels::dotc(b.matrix().data(), a.matrix().data(), count);
  if (a.hermitian_flagged())
    return kernels::dotc(a.matrix().data(), b.matrix().data(), count);
  cplx s = 0.0;
  const Eigen::Index n = a.dim();
  for (Eigen::Index j = 0; j < n; ++j) {
    s += a.matrix().row(j).transpose().cwiseProduct(b.matrix().col(j)).sum();
  }
  return s;
}

LocalOperator tensor_product(const LocalOperator& a, const LocalOperator& b) {
  if (a.site_dim() != b.site_dim())
    throw ValidationError("tensor_product requires equal site dimensions");
  if (a.support().intersects(b.support()))
    throw ContainmentError("tensor_product requires disjoint supports");
  const Region all = a.support().set_union(b.support());
  const std::size_t dim = checked_dimension(a.site_dim(), all.volume(), "tensor product");
  const SiteIndexer idx(all.volume(), a.site_dim());
  const auto pa = site_positions(a.support(), all, "tensor_product");
  const auto pb = site_positions(b.support(), all, "tensor_product");
  const auto offs_a = idx.subspace_offsets(pa);
  const auto offs_b = idx.subspace_offsets(pb);
  Matrix out(dim, dim);
  const Eigen::Index da = a.dim(), db = b.dim();
  for (Eigen::Index jb = 0; jb < db; ++jb)
    for (Eigen::Index ja = 0; ja < da; ++ja) {
      const std::size_t col = offs_a[ja] + offs_b[jb];
      for (Eigen::Index ib = 0; ib < db; ++ib) {
        const cplx bv = b.matrix()(ib, jb);
        for (Eigen::Index ia = 0; ia < da; ++ia)
          out(offs_a[ia] + offs_b[ib], col) = a.matrix()(ia, ja) * bv;
      }
    }
  const bool herm = a.hermitian_flagged() && b.hermitian_flagged();
  return LocalOperator(all, a.site_dim(), std::move(out), herm);
}

std::vector<std::size_t> site_positions(const Region& sub, const Region& ambient,
                                        const std::string& what) {
  std::vector<std::size_t> pos;
  pos.reserve(sub.volume());
  for (const auto& s : sub.sites()) {
    const std::ptrdiff_t p = ambient.index_of(s);
    if (p < 0)
      throw ContainmentError(what + ": site " + site_to_string(s) +
                             " not contained in " + ambient.to_string());
    pos.push_back(static_cast<std::size_t>(p));
  }
  return pos;
}

}  // namespace qgibbs
