#pragma once

#include <vector>

#include "qgibbs/entropy.hpp"

namespace qgibbs {

struct PerturbResult {
  LocalOperator unnormalized;  // e^{log rho + h}, positive
  double weight;               // its trace
  DensityMatrix normalized;
};

/// log of a full-rank density (DomainError when rank-deficient at the cutoff).
Matrix log_density_matrix(const DensityMatrix& rho,
                          double support_cutoff = kDefaultSupportCutoff);

/// Finite-dimensional state perturbation: rho -> e^{log rho + h} up to
/// normalization. Requires full-rank rho (min eigenvalue above the cutoff)
/// and hermitian h on the same support. Applying h and then -h at the
/// unnormalized level recovers rho.
PerturbResult perturb(const DensityMatrix& rho, const LocalOperator& h,
                      double support_cutoff = kDefaultSupportCutoff);

struct PbGtResult {
  double pb_slack;          // weight - e^{Tr(rho h)}            >= 0
  double gt_slack;          // Tr(rho e^h) - weight              >= 0
  double norm_lower_slack;  // weight - e^{-||h||}               >= 0
  double norm_upper_slack;  // e^{||h||} - weight                >= 0
  double weight;
};

/// Peierls-Bogolubov / Golden-Thompson sandwich on the perturbation weight,
/// plus the operator-norm corollary.
PbGtResult pb_gt_check(const DensityMatrix& rho, const LocalOperator& h,
                       double support_cutoff = kDefaultSupportCutoff);

struct GibbsProductResult {
  double marginal_gap;       // trace distance of the perturbed reduction from rho^IG_inner
  double factorization_gap;  // trace distance from rho^IG_inner (x) rho^IG_rest
};

/// Verifies the finite-volume product form: perturbing the Gibbs state on
/// `ambient` by beta * (surface energy of `inner`) factorizes it exactly
/// into the two internal Gibbs states. Both gaps are algebraically zero;
/// the returned numbers are pure round-off.
GibbsProductResult gibbs_product_check(const Potential& pot, double beta,
                                       const Region& inner, const Region& ambient);

struct LogDensityGapResult {
  double gap_norm;      // || log rho^IG - log psi ||
  double per_site;      // gap_norm / |region|
  double surface_norm;  // || W_region ||
  double ratio_vs_surface;  // gap_norm / (beta ||W||); 0 when W = 0
  std::vector<double> identity_residuals;  // per supplied omega, the
  // |S(omega|rho^IG) - S(omega|psi) - omega(log psi - log rho^IG)| residual
};

/// Compares the log-densities of the internal Gibbs state and a supplied
/// equilibrium-marginal stand-in on the same region.
LogDensityGapResult log_density_gap(const Potential& pot, double beta, const Region& region,
                                    const DensityMatrix& psi_marginal,
                                    const std::vector<DensityMatrix>& omegas = {},
                                    double support_cutoff = kDefaultSupportCutoff);

}  // namespace qgibbs
