#pragma once

#include <vector>

#include "qgibbs/extrapolation.hpp"
#include "qgibbs/states.hpp"

namespace qgibbs {

/// -sum lambda log lambda, natural log, 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Umegaki relative entropy Tr rho1 (log rho1 - log rho2) when the support
/// of rho1 is contained in that of rho2 (projector test
/// ||(I-P2)P1|| <= 1e-8 at the cutoff); +infinity otherwise.
double relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2,
                        double support_cutoff = kDefaultSupportCutoff);

/// S(omega_region)/|region| over the box sequence, with the 1/V limit fit.
ExtrapolationSeries entropy_density(const StateFamily& state,
                                    const std::vector<Region>& boxes);

}  // namespace qgibbs
