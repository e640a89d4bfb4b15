#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgibbs/states.hpp"

namespace qgibbs {

struct OmegaSpec {
  std::string kind = "product";  // product | tracial | internal_gibbs | buffered_gibbs
  std::vector<double> diag = {0.3, 0.7};          // product, diagonal single-site state
  std::optional<std::array<double, 3>> bloch;     // product, general qubit state
  double beta_prime = 0.5;                        // internal_gibbs
  int buffer = 1;                                 // buffered_gibbs
};

struct ToleranceSpec {
  double drift_gate = 0.02;     // buffered-marginal drift allowed before "inconclusive"
  double theorem_final = 0.05;  // final per-site difference bound
  double identity = 1e-9;       // algebraic identity residuals
  double mcmillan_mean = 0.05;  // last mean vs extrapolated entropy density
};

/// One experiment: model, geometry, reference state, tolerances, outputs.
/// Schema-validated before any computation; every run embeds the resolved
/// form of this config in its artifacts.
struct ExperimentConfig {
  std::string preset = "tfi";
  std::map<std::string, double> couplings = {{"J", 1.0}, {"g", 1.0}};
  double beta = 0.8;
  int nu = 1;
  std::vector<int> box_sizes = {4, 6, 8, 10};
  int buffer = 3;
  std::string boundary = "open";
  OmegaSpec omega;
  ToleranceSpec tolerances;
  std::size_t max_dimension = std::size_t{1} << 16;
  std::uint64_t seed = 12345;
  std::string output_dir = "out";
  int mean_field_resolution = 7;
  int extrapolation_window = 4;
  int inner_sites = 3;    // gibbs-product check geometry
  int ambient_sites = 7;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;

  ModelSpec model_spec() const;
  Potential potential() const;
  Boundary bc() const;
  /// Centered boxes (side = box_sizes entry; nu = 2 squares that side).
  std::vector<Region> boxes() const;
  Region centered_box(int side) const;
  StateFamily omega_family() const;
  /// Installs the dimension cap. Call once before computing.
  void apply() const;
};

}  // namespace qgibbs
