#pragma once

#include <memory>
#include <optional>

#include "qgibbs/energy.hpp"
#include "qgibbs/operator_core.hpp"

namespace qgibbs {

enum class Boundary { open, periodic };

/// Finite-volume Gibbs computations for one (potential, beta, region) cell:
/// log-partition function, thermal energy, the Gibbs density, and reduced
/// densities of it.
///
/// Three deterministic backends are selected from the potential alone:
/// classical (diagonal) models stay on the diagonal vector, exactly real
/// models run real-symmetric LAPACK, everything else runs complex hermitian
/// LAPACK. The reduced density never materializes the full Gibbs matrix: the
/// eigenvector slabs are weight-scaled and contracted environment block by
/// environment block (BLAS syrk/herk), which is what makes the larger
/// volumes fit in memory.
class GibbsEngine {
 public:
  GibbsEngine(const Potential& pot, double beta, Region region,
              Boundary bc = Boundary::open);
  ~GibbsEngine();

  const Region& region() const { return region_; }
  double beta() const { return beta_; }

  /// log Tr e^{-beta U}.
  double log_partition();
  /// Eigenvalues of U, ascending.
  const RealVector& energy_eigenvalues();
  /// Tr(rho U) for rho = e^{-beta U}/Z.
  double energy_mean();
  /// e^{-beta U}/Z as an operator on the region.
  LocalOperator density();
  /// Partial trace of the Gibbs density onto `inner` (subset of the region).
  LocalOperator marginal_onto(const Region& inner);

 private:
  void ensure_vectors();

  struct Impl;
  std::unique_ptr<Impl> impl_;
  Potential pot_;
  double beta_;
  Region region_;
  Boundary bc_;
};

}  // namespace qgibbs
