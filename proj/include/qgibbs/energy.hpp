#pragma once

#include "qgibbs/potential.hpp"

namespace qgibbs {

/// U_region: sum of all interaction translates fully inside the region
/// (open boundary).
LocalOperator internal_energy(const Potential& pot, const Region& region);

/// Periodic closure on a full box: sum over all wrapped translates.
LocalOperator internal_energy_periodic(const Potential& pot, const Region& box);

/// W_region: sum of all translates crossing the boundary of `region`.
/// `ambient` must contain the range-collar of the region so the sum is the
/// complete one; the result lives on the union of the crossing supports.
LocalOperator surface_energy(const Potential& pot, const Region& region, const Region& ambient);

/// sum over regions containing the origin of ||Phi(X)|| / |X|.
double big_banach_norm(const Potential& pot);

namespace detail {
/// Shared energy accumulation over a raw column-major dim x dim buffer;
/// Scalar is double (real models) or cplx. Used by internal_energy and the
/// Gibbs engine so both walk translates in the identical order.
template <typename Scalar>
void accumulate_internal_energy(const Potential& pot, const Region& region,
                                Scalar* data, std::size_t dim, bool periodic);

/// Diagonal-model variant: accumulates only the diagonal of U.
void accumulate_internal_energy_diagonal(const Potential& pot, const Region& region,
                                         double* diag, std::size_t dim, bool periodic);
}

}  // namespace qgibbs
