#include "qgibbs/potential.hpp"

#include <algorithm>
#include <set>

#include "qgibbs/errors.hpp"
#include "qgibbs/pauli.hpp"

namespace qgibbs {

namespace {

bool term_matrix_is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
  return true;
}

Site origin(int nu) { return Site(static_cast<std::size_t>(nu), 0); }

}  // namespace

Potential::Potential(int site_dim, int nu, std::vector<InteractionTerm> terms)
    : site_dim_(site_dim), nu_(nu), terms_(std::move(terms)) {
  if (site_dim_ < 2) throw ValidationError("potential site dimension must be >= 2");
  if (nu_ < 1) throw ValidationError("lattice dimension must be >= 1");
  for (const auto& t : terms_) {
    if (t.region.empty() || t.region.dimension() != nu_)
      throw ValidationError("interaction term region must be nonempty with matching dimension");
    if (!t.region.contains(origin(nu_)))
      throw ValidationError("interaction representative must contain the origin");
    if (!(t.op.support() == t.region) || t.op.site_dim() != site_dim_)
      throw ValidationError("interaction operator must be supported exactly on its region");
    if (!t.op.hermitian_flagged())
      throw ValidationError("interaction operators must be hermitian");
    range_ = std::max(range_, t.region.diameter());
    real_ = real_ && t.op.is_real();
    diagonal_ = diagonal_ && term_matrix_is_diagonal(t.op.matrix());
  }
}

void Potential::for_each_internal_translate(const Region& region, const TranslateFn& fn) const {
  if (region.empty()) return;
  if (region.dimension() != nu_)
    throw GeometryError("region dimension does not match the potential");
  Site lo, hi;
  region.bounding_box(lo, hi);
  for (const auto& term : terms_) {
    Site tlo, thi;
    term.region.bounding_box(tlo, thi);
    // shifts that can place the term inside the bounding box
    Site shift(nu_, 0);
    for (int d = 0; d < nu_; ++d) shift[d] = lo[d] - tlo[d];
    while (true) {
      bool inside = true;
      for (const auto& s : term.region.sites()) {
        Site t = s;
        for (int d = 0; d < nu_; ++d) t[d] += shift[d];
        if (!region.contains(t)) {
          inside = false;
          break;
        }
      }
      if (inside) fn(term, shift);
      int d = nu_ - 1;
      while (d >= 0) {
        if (++shift[d] <= hi[d] - thi[d]) break;
        shift[d] = lo[d] - tlo[d];
        --d;
      }
      if (d < 0) break;
    }
  }
}

void Potential::for_each_crossing_translate(const Region& region, const TranslateFn& fn) const {
  if (region.empty()) return;
  if (region.dimension() != nu_)
    throw GeometryError("region dimension does not match the potential");
  Site lo, hi;
  region.bounding_box(lo, hi);
  for (const auto& term : terms_) {
    Site tlo, thi;
    term.region.bounding_box(tlo, thi);
    Site shift(nu_, 0);
    // any shift with bounding-box overlap can cross
    for (int d = 0; d < nu_; ++d) shift[d] = lo[d] - thi[d];
    while (true) {
      bool any_in = false, any_out = false;
      for (const auto& s : term.region.sites()) {
        Site t = s;
        for (int d = 0; d < nu_; ++d) t[d] += shift[d];
        (region.contains(t) ? any_in : any_out) = true;
      }
      if (any_in && any_out) fn(term, shift);
      int d = nu_ - 1;
      while (d >= 0) {
        if (++shift[d] <= hi[d] - tlo[d]) break;
        shift[d] = lo[d] - thi[d];
        --d;
      }
      if (d < 0) break;
    }
  }
}

void Potential::for_each_periodic_translate(
    const Region& box,
    const std::function<void(const InteractionTerm&, const std::vector<Site>&)>& fn) const {
  if (!box.is_box())
    throw GeometryError("periodic closure requires a full box region");
  Site lo, hi;
  box.bounding_box(lo, hi);
  std::vector<int> len(nu_);
  for (int d = 0; d < nu_; ++d) {
    len[d] = hi[d] - lo[d] + 1;
    if (range_ >= len[d])
      throw GeometryError("periodic closure needs box side > interaction range");
  }
  for (const auto& term : terms_) {
    for (const auto& anchor : box.sites()) {
      std::vector<Site> wrapped;
      wrapped.reserve(term.region.volume());
      for (const auto& s : term.region.sites()) {
        Site t(static_cast<std::size_t>(nu_));
        for (int d = 0; d < nu_; ++d) {
          const int raw = s[d] + anchor[d] - lo[d];
          t[d] = lo[d] + ((raw % len[d]) + len[d]) % len[d];
        }
        wrapped.push_back(std::move(t));
      }
      fn(term, wrapped);
    }
  }
}

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

namespace {

// bond representative {0, e_d}; sites sorted so 0 comes first
Region bond_region(int nu, int direction) {
  Site a(static_cast<std::size_t>(nu), 0);
  Site b(static_cast<std::size_t>(nu), 0);
  b[direction] = 1;
  return Region({a, b});
}

InteractionTerm bond_term(int nu, int direction, const Matrix& m) {
  Region r = bond_region(nu, direction);
  return {r, LocalOperator(r, 2, m, true)};
}

InteractionTerm site_term(int nu, const Matrix& m) {
  Region r(std::vector<Site>{Site(static_cast<std::size_t>(nu), 0)});
  return {r, LocalOperator(r, 2, m, true)};
}

}  // namespace

Potential classical_ising_potential(double J, int nu) {
  std::vector<InteractionTerm> terms;
  const Matrix zz = -J * pauli::kron(pauli::z(), pauli::z());
  for (int d = 0; d < nu; ++d) terms.push_back(bond_term(nu, d, zz));
  return Potential(2, nu, std::move(terms));
}

Potential transverse_field_ising_potential(double J, double g, int nu) {
  std::vector<InteractionTerm> terms;
  const Matrix zz = -J * pauli::kron(pauli::z(), pauli::z());
  for (int d = 0; d < nu; ++d) terms.push_back(bond_term(nu, d, zz));
  terms.push_back(site_term(nu, -g * pauli::x()));
  return Potential(2, nu, std::move(terms));
}

Potential xy_potential(double J, int nu) {
  std::vector<InteractionTerm> terms;
  const Matrix b = -J * (pauli::kron(pauli::x(), pauli::x()) + pauli::kron(pauli::y(), pauli::y()));
  for (int d = 0; d < nu; ++d) terms.push_back(bond_term(nu, d, b));
  return Potential(2, nu, std::move(terms));
}

Potential heisenberg_potential(double J, int nu) {
  std::vector<InteractionTerm> terms;
  const Matrix b = -J * (pauli::kron(pauli::x(), pauli::x()) + pauli::kron(pauli::y(), pauli::y()) +
                         pauli::kron(pauli::z(), pauli::z()));
  for (int d = 0; d < nu; ++d) terms.push_back(bond_term(nu, d, b));
  return Potential(2, nu, std::move(terms));
}

Potential make_potential(const ModelSpec& spec) {
  if (spec.beta <= 0.0) throw ValidationError("model.beta: must be > 0");
  if (spec.nu < 1 || spec.nu > 2)
    throw ValidationError("model.nu: supported lattice dimensions are 1 and 2");
  auto coupling = [&](const std::string& name, double fallback) {
    auto it = spec.couplings.find(name);
    return it == spec.couplings.end() ? fallback : it->second;
  };
  auto check_known = [&](std::initializer_list<std::string> known) {
    for (const auto& [k, v] : spec.couplings) {
      (void)v;
      if (std::find(known.begin(), known.end(), k) == known.end())
        throw ValidationError("model.couplings." + k + ": unknown coupling for preset '" +
                              spec.preset + "'");
    }
  };
  if (spec.preset == "classical_ising") {
    check_known({"J"});
    return classical_ising_potential(coupling("J", 1.0), spec.nu);
  }
  if (spec.preset == "tfi") {
    check_known({"J", "g"});
    return transverse_field_ising_potential(coupling("J", 1.0), coupling("g", 1.0), spec.nu);
  }
  if (spec.preset == "xy") {
    check_known({"J"});
    return xy_potential(coupling("J", 1.0), spec.nu);
  }
  if (spec.preset == "heisenberg") {
    check_known({"J"});
    return heisenberg_potential(coupling("J", 1.0), spec.nu);
  }
  throw ValidationError("model.preset: unknown preset '" + spec.preset + "'");
}

}  // namespace qgibbs
