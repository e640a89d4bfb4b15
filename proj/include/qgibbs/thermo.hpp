#pragma once

#include <array>
#include <vector>

#include "qgibbs/entropy.hpp"

namespace qgibbs {

/// log Tr e^{-beta U_region} / |region| over the box sequence. beta = 0 is
/// allowed (counting dimension).
ExtrapolationSeries pressure(const Potential& pot, double beta,
                             const std::vector<Region>& boxes,
                             Boundary bc = Boundary::open);

/// omega(U_region) / |region| over the box sequence.
ExtrapolationSeries energy_density(const Potential& pot, const StateFamily& omega,
                                   const std::vector<Region>& boxes);

/// S(omega_region | rho^IG_region) / |region| over the box sequence; the
/// per-site divergence from the internal Gibbs family.
ExtrapolationSeries information_rate(const Potential& pot, double beta,
                                     const StateFamily& omega,
                                     const std::vector<Region>& boxes,
                                     Boundary bc = Boundary::open);

/// [S(omega_region) - beta omega(U_region)] / |region| over the boxes; the
/// quantity whose supremum over translation-invariant states is the pressure.
ExtrapolationSeries free_energy_functional(const Potential& pot, double beta,
                                           const StateFamily& omega,
                                           const std::vector<Region>& boxes);

struct MeanFieldResult {
  std::array<double, 3> bloch{};  // maximizer, (x,y,z)
  double value = 0.0;             // extrapolated functional value
  ExtrapolationSeries series;     // per-box values of the maximizer
  Matrix rho0;                    // the single-site density itself
};

/// Free-energy maximization over product states: grid search over the
/// supplied single-site densities followed by coordinate descent on the
/// Bloch vector (site_dim 2 only), to 1e-6 in the parameters. The product
/// values are assembled from exact per-site formulas, which agree with the
/// generic functional (equivalence-tested) but cost microseconds per
/// candidate.
MeanFieldResult mean_field_scan(const Potential& pot, double beta,
                                const std::vector<Matrix>& grid,
                                const std::vector<Region>& boxes);

/// Bloch-ball grid for site_dim 2 with `resolution` points per axis;
/// always contains the exact center (maximally mixed state).
std::vector<Matrix> bloch_grid(int resolution);

/// rho0 = (I + v . sigma)/2; |v| <= 1 required.
Matrix bloch_density(const std::array<double, 3>& v);

/// Exact per-box free-energy functional value of the product state rho0^(x V)
/// (used by the scan; equals free_energy_functional on the product family).
double product_free_energy_point(const Potential& pot, double beta, const Matrix& rho0,
                                 const Region& box);

}  // namespace qgibbs
