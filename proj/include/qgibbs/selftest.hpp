#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgibbs {

struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst observed deviation/slack for the property
  std::string detail;
};

// Randomized property checks, all driven by one recorded seed. Each returns
// the worst deviation it saw so reports stay comparable run to run.
PropertyResult check_klein(std::uint64_t seed, int pairs = 200);
PropertyResult check_ssa_random(std::uint64_t seed, int states = 100);
PropertyResult check_ssa_model(std::uint64_t seed);
PropertyResult check_monotonicity(std::uint64_t seed, int pairs = 50);
PropertyResult check_adjointness(std::uint64_t seed, int pairs = 50);
PropertyResult check_exp_log_roundtrip(std::uint64_t seed, int states = 100);
PropertyResult check_exp_additivity(std::uint64_t seed, int pairs = 50);
PropertyResult check_ptrace_properties(std::uint64_t seed, int states = 50);
PropertyResult check_pb_gt_random(std::uint64_t seed, int pairs = 100);
PropertyResult check_pb_gt_commuting(std::uint64_t seed, int pairs = 50);
PropertyResult check_perturb_involution(std::uint64_t seed, int pairs = 50);
PropertyResult check_eig_reconstruction(std::uint64_t seed, int states = 100);
PropertyResult check_kernel_equivalence(std::uint64_t seed);

/// The full suite in a fixed order.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed);

}  // namespace qgibbs
