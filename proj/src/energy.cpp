#include "qgibbs/energy.hpp"

#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/indexing.hpp"
#include "qgibbs/operator_core.hpp"
#include "qgibbs/sysmem.hpp"

namespace qgibbs {

namespace detail {

namespace {

template <typename Scalar>
std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> term_matrices(
    const Potential& pot);

template <>
std::vector<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>> term_matrices<double>(
    const Potential& pot) {
  std::vector<RealMatrix> out;
  out.reserve(pot.terms().size());
  for (const auto& t : pot.terms()) out.push_back(t.op.matrix().real());
  return out;
}

template <>
std::vector<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>> term_matrices<cplx>(
    const Potential& pot) {
  std::vector<Matrix> out;
  out.reserve(pot.terms().size());
  for (const auto& t : pot.terms()) out.push_back(t.op.matrix());
  return out;
}

}  // namespace

template <typename Scalar>
void accumulate_internal_energy(const Potential& pot, const Region& region,
                                Scalar* data, std::size_t dim, bool periodic) {
  const SiteIndexer idx(region.volume(), pot.site_dim());
  if (idx.dim() != dim) throw Error("internal energy buffer dimension mismatch");
  const auto mats = term_matrices<Scalar>(pot);
  auto term_index = [&](const InteractionTerm& term) {
    for (std::size_t i = 0; i < pot.terms().size(); ++i)
      if (&pot.terms()[i] == &term) return i;
    throw Error("unknown interaction term");
  };
  if (!periodic) {
    pot.for_each_internal_translate(region, [&](const InteractionTerm& term, const Site& shift) {
      std::vector<std::size_t> positions;
      positions.reserve(term.region.volume());
      for (const auto& s : term.region.sites()) {
        Site t = s;
        for (int d = 0; d < region.dimension(); ++d) t[d] += shift[d];
        positions.push_back(static_cast<std::size_t>(region.index_of(t)));
      }
      const auto& m = mats[term_index(term)];
      add_embedded(m.data(), static_cast<std::size_t>(m.rows()), positions, idx, data);
    });
  } else {
    pot.for_each_periodic_translate(region, [&](const InteractionTerm& term,
                                                const std::vector<Site>& wrapped) {
      std::vector<std::size_t> positions;
      positions.reserve(wrapped.size());
      for (const auto& s : wrapped)
        positions.push_back(static_cast<std::size_t>(region.index_of(s)));
      const auto& m = mats[term_index(term)];
      add_embedded(m.data(), static_cast<std::size_t>(m.rows()), positions, idx, data);
    });
  }
}

template void accumulate_internal_energy<double>(const Potential&, const Region&, double*,
                                                 std::size_t, bool);
template void accumulate_internal_energy<cplx>(const Potential&, const Region&, cplx*,
                                               std::size_t, bool);

void accumulate_internal_energy_diagonal(const Potential& pot, const Region& region,
                                         double* diag, std::size_t dim, bool periodic) {
  if (!pot.is_diagonal())
    throw Error("diagonal energy accumulation requires a classical potential");
  const SiteIndexer idx(region.volume(), pot.site_dim());
  if (idx.dim() != dim) throw Error("internal energy buffer dimension mismatch");

  auto add_term = [&](const LocalOperator& op, const std::vector<std::size_t>& positions) {
    const auto sup_offs = idx.subspace_offsets(positions);
    std::vector<std::size_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> env_positions;
    for (std::size_t p = 0, k = 0; p < idx.n_sites(); ++p) {
      if (k < sorted.size() && sorted[k] == p) {
        ++k;
      } else {
        env_positions.push_back(p);
      }
    }
    std::vector<std::size_t> outer;
    std::size_t run = 0;
    idx.split_offsets(env_positions, outer, run);
    for (std::size_t i = 0; i < static_cast<std::size_t>(op.dim()); ++i) {
      const double v = op.matrix()(i, i).real();
      if (v == 0.0) continue;
      for (const std::size_t e : outer)
        kernels::add_const_stride(v, diag + sup_offs[i] + e, 1, run);
    }
  };

  if (!periodic) {
    pot.for_each_internal_translate(region, [&](const InteractionTerm& term, const Site& shift) {
      std::vector<std::size_t> positions;
      for (const auto& s : term.region.sites()) {
        Site t = s;
        for (int d = 0; d < region.dimension(); ++d) t[d] += shift[d];
        positions.push_back(static_cast<std::size_t>(region.index_of(t)));
      }
      add_term(term.op, positions);
    });
  } else {
    pot.for_each_periodic_translate(region, [&](const InteractionTerm& term,
                                                const std::vector<Site>& wrapped) {
      std::vector<std::size_t> positions;
      for (const auto& s : wrapped)
        positions.push_back(static_cast<std::size_t>(region.index_of(s)));
      add_term(term.op, positions);
    });
  }
}

}  // namespace detail

namespace {

LocalOperator build_energy(const Potential& pot, const Region& region, bool periodic) {
  if (region.empty()) return LocalOperator::zero(region, pot.site_dim());
  if (region.dimension() != pot.dimension())
    throw GeometryError("internal_energy: region dimension does not match the potential");
  const std::size_t dim = checked_dimension(pot.site_dim(), region.volume(),
                                            "internal energy on " + region.to_string());
  if (dim >= 4096)
    check_memory_budget(dim * dim * sizeof(cplx), "internal energy on " + region.to_string());
  Matrix u = Matrix::Zero(dim, dim);
  detail::accumulate_internal_energy<cplx>(pot, region, u.data(), dim, periodic);
  return LocalOperator(region, pot.site_dim(), std::move(u), true);
}

}  // namespace

LocalOperator internal_energy(const Potential& pot, const Region& region) {
  return build_energy(pot, region, false);
}

LocalOperator internal_energy_periodic(const Potential& pot, const Region& box) {
  return build_energy(pot, box, true);
}

LocalOperator surface_energy(const Potential& pot, const Region& region, const Region& ambient) {
  if (region.empty()) return LocalOperator::zero(region, pot.site_dim());
  if (!ambient.contains(region))
    throw GeometryError("surface_energy: region not contained in ambient");
  if (!ambient.contains(region.enlarged(pot.range()))) {
    std::ostringstream os;
    os << "surface_energy: ambient " << ambient.to_string()
       << " does not contain the range-" << pot.range() << " collar of "
       << region.to_string();
    throw GeometryError(os.str());
  }

  struct Crossing {
    const InteractionTerm* term;
    Site shift;
  };
  std::vector<Crossing> crossings;
  Region support;  // union of crossing supports
  pot.for_each_crossing_translate(region, [&](const InteractionTerm& term, const Site& shift) {
    crossings.push_back({&term, shift});
    support = support.set_union(term.region.translated(shift));
  });
  if (crossings.empty()) return LocalOperator::zero(Region(), pot.site_dim());

  const std::size_t dim = checked_dimension(pot.site_dim(), support.volume(), "surface energy");
  const SiteIndexer idx(support.volume(), pot.site_dim());
  Matrix w = Matrix::Zero(dim, dim);
  for (const auto& c : crossings) {
    std::vector<std::size_t> positions;
    for (const auto& s : c.term->region.sites()) {
      Site t = s;
      for (int d = 0; d < support.dimension(); ++d) t[d] += c.shift[d];
      positions.push_back(static_cast<std::size_t>(support.index_of(t)));
    }
    detail::add_embedded(c.term->op.matrix().data(),
                         static_cast<std::size_t>(c.term->op.dim()), positions, idx, w.data());
  }
  return LocalOperator(support, pot.site_dim(), std::move(w), true);
}

double big_banach_norm(const Potential& pot) {
  double total = 0.0;
  for (const auto& term : pot.terms()) {
    const double norm = operator_norm(term.op);
    const double weight = norm / static_cast<double>(term.region.volume());
    // the translate X - s contains the origin for every s in X
    for (std::size_t k = 0; k < term.region.volume(); ++k) total += weight;
  }
  return total;
}

}  // namespace qgibbs
