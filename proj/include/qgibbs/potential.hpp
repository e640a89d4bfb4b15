#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qgibbs/local_operator.hpp"

namespace qgibbs {

/// One representative interaction, anchored so its region contains the
/// origin. The full interaction is the set of all lattice translates.
struct InteractionTerm {
  Region region;
  LocalOperator op;  // hermitian, supported exactly on region
};

/// A translation-covariant finite-range interaction. The inverse temperature
/// is never stored here; it is supplied wherever energies are used.
class Potential {
 public:
  Potential(int site_dim, int nu, std::vector<InteractionTerm> terms);

  int site_dim() const { return site_dim_; }
  int dimension() const { return nu_; }
  /// Max L-infinity diameter over representatives.
  int range() const { return range_; }
  const std::vector<InteractionTerm>& terms() const { return terms_; }

  /// All representative matrices have exactly zero imaginary part.
  bool is_real() const { return real_; }
  /// All representative matrices are exactly diagonal (classical model).
  bool is_diagonal() const { return diagonal_; }

  using TranslateFn = std::function<void(const InteractionTerm&, const Site& shift)>;

  /// Every translate X+x fully contained in `region` (open boundary).
  void for_each_internal_translate(const Region& region, const TranslateFn& fn) const;

  /// Every translate with X∩region != {} and X not contained in region,
  /// i.e. the interactions crossing the boundary.
  void for_each_crossing_translate(const Region& region, const TranslateFn& fn) const;

  /// Periodic closure of a full box: one translate per anchor site, sites
  /// wrapped coordinate-wise. fn receives the wrapped site list in the order
  /// matching the term's factors (callers re-sort and permute).
  void for_each_periodic_translate(const Region& box,
                                   const std::function<void(const InteractionTerm&,
                                                            const std::vector<Site>&)>& fn) const;

 private:
  int site_dim_;
  int nu_;
  int range_ = 0;
  bool real_ = true;
  bool diagonal_ = true;
  std::vector<InteractionTerm> terms_;
};

/// Named model: preset + couplings + inverse temperature + lattice dimension.
struct ModelSpec {
  std::string preset;  // classical_ising | tfi | xy | heisenberg
  std::map<std::string, double> couplings;
  double beta = 1.0;
  int nu = 1;
};

/// Expands a ModelSpec into its Potential. Unknown presets or couplings and
/// beta <= 0 are ValidationErrors.
Potential make_potential(const ModelSpec& spec);

/// Preset factories (site_dim 2, one bond per lattice direction).
Potential classical_ising_potential(double J, int nu = 1);
Potential transverse_field_ising_potential(double J, double g, int nu = 1);
Potential xy_potential(double J, int nu = 1);
Potential heisenberg_potential(double J, int nu = 1);

}  // namespace qgibbs
