#pragma once

#include <limits>
#include <string>
#include <vector>

#include "qgibbs/config.hpp"
#include "qgibbs/perturbation.hpp"
#include "qgibbs/thermo.hpp"

namespace qgibbs {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct TheoremRow {
  std::size_t volume = 0;
  double rel_ig_per_site = kUnset;        // S(omega|rho^IG)/V
  double rel_psi_per_site = kUnset;       // S(omega|psi)/V
  double difference_per_site = kUnset;    // |difference|
  double gap_expectation_per_site = kUnset;  // omega(log psi - log rho^IG)/V
  double identity_residual = kUnset;      // |difference - expectation| (signed forms)
  double drift = kUnset;                  // marginal drift buffer-1 vs buffer
  std::string error;                      // nonempty when this cell failed
};

/// Everything the theorem run produces: the two per-site relative-entropy
/// series, their difference trend, the extrapolated rates, and the
/// buffer-drift diagnostics that gate the verdict.
struct TheoremReport {
  std::vector<TheoremRow> rows;
  double info_rate = kUnset;          // extrapolated S(omega|rho^IG)/V
  double info_rate_residual = kUnset;
  double rel_density = kUnset;        // extrapolated S(omega|psi)/V
  double rel_density_residual = kUnset;
  double gap_estimate = kUnset;       // |info_rate - rel_density|
  double final_difference = kUnset;   // last computed per-site difference
  double max_drift = kUnset;
  bool trend_decreasing = false;
  std::string status;                 // pass | fail | inconclusive
  std::vector<std::string> notes;
  nlohmann::json resolved_config;

  nlohmann::json to_json() const;
};

/// Runs the relative-entropy comparison between the internal Gibbs family
/// and the buffered equilibrium stand-in for the configured omega.
/// Cells that exceed the resource budget are recorded, not fatal.
TheoremReport verify_theorem1(const ExperimentConfig& cfg);

/// Same run against caller-supplied families (their marginal caches are
/// shared with any other consumer of the same family copies).
TheoremReport verify_theorem1(const ExperimentConfig& cfg, const StateFamily& omega,
                              const StateFamily& ig, const StateFamily& psi);

struct McMillanPoint {
  std::size_t volume = 0;
  double mean = kUnset;      // phi(X)/V with X = -log D(phi_V); the entropy density point
  double variance = kUnset;  // phi((X - phi(X))^2)/V^2
  std::string error;
};

struct McMillanReport {
  std::vector<McMillanPoint> points;
  double entropy_limit = kUnset;
  double entropy_fit_residual = kUnset;
  bool variance_decreasing = false;
  double final_mean_gap = kUnset;  // |last mean - entropy_limit|
  std::string status;              // pass | fail
  std::vector<std::string> notes;
  nlohmann::json resolved_config;

  nlohmann::json to_json() const;
};

/// Concentration of the per-site entropy operator for the configured family.
McMillanReport mcmillan_check(const ExperimentConfig& cfg);

/// Executes one CLI subcommand: computes, writes CSV/JSON artifacts under
/// cfg.output_dir, prints a short summary. Returns the process exit code
/// (0 pass, 1 gated assertion failed, 2 inconclusive).
int run_suite(const std::string& subcommand, const ExperimentConfig& cfg);

}  // namespace qgibbs
