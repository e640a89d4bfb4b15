#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qgibbs/gibbs_engine.hpp"
#include "qgibbs/operator_core.hpp"

namespace qgibbs {

/// A positive semidefinite hermitian operator with unit trace. Construction
/// validates |trace - 1| <= 1e-12 and min eigenvalue >= -1e-12 and caches the
/// spectral decomposition for entropy work downstream.
class DensityMatrix {
 public:
  explicit DensityMatrix(LocalOperator op);

  const LocalOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Region& support() const { return op_.support(); }
  int site_dim() const { return op_.site_dim(); }
  Eigen::Index dim() const { return op_.dim(); }
  const SpectralDecomposition& spectrum() const { return *spec_; }
  double min_eigenvalue() const { return spec_->eigenvalues(0); }

 private:
  LocalOperator op_;
  std::shared_ptr<const SpectralDecomposition> spec_;
};

/// 1/2 ||rho - sigma||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

enum class StateKind { product, internal_gibbs, buffered_gibbs, tracial };

/// A rule producing compatible reduced density matrices for requested
/// regions. Immutable; marginals are memoized internally.
///
///   product        tensor power of a fixed single-site density
///   tracial        I / n^|region|
///   internal_gibbs e^{-beta U_region} / Z  (depends on the region only)
///   buffered_gibbs reduction onto the region of the internal Gibbs state on
///                  the buffer-collar enlargement; the computable stand-in
///                  for an infinite-volume equilibrium state
class StateFamily {
 public:
  static StateFamily product(const Matrix& rho0, int site_dim, int nu);
  static StateFamily tracial(int site_dim, int nu);
  static StateFamily internal_gibbs(Potential pot, double beta,
                                    Boundary bc = Boundary::open);
  static StateFamily buffered_gibbs(Potential pot, double beta, int buffer,
                                    Boundary bc = Boundary::open);

  StateKind kind() const { return kind_; }
  int site_dim() const { return site_dim_; }
  int dimension() const { return nu_; }
  double beta() const { return beta_; }
  int buffer() const { return buffer_; }
  const Potential* potential() const { return pot_ ? &*pot_ : nullptr; }
  std::string describe() const;

  DensityMatrix marginal(const Region& region) const;

  /// Trace distance between the buffered marginals at two buffer widths;
  /// the convergence diagnostic for the equilibrium approximation.
  double buffered_drift(const Region& region, int b1, int b2) const;

 private:
  struct MarginalCache;

  StateFamily();
  DensityMatrix compute_marginal(const Region& region, int buffer_override) const;
  DensityMatrix cached_marginal(const Region& region, int buffer_override) const;

  StateKind kind_ = StateKind::tracial;
  int site_dim_ = 2;
  int nu_ = 1;
  double beta_ = 0.0;
  int buffer_ = 0;
  Boundary bc_ = Boundary::open;
  std::optional<Potential> pot_;
  Matrix rho0_;
  std::shared_ptr<MarginalCache> cache_;
};

}  // namespace qgibbs
