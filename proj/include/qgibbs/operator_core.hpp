#pragma once

#include "qgibbs/local_operator.hpp"

namespace qgibbs {

/// Relative cutoff below which an eigenvalue counts as off-support.
inline constexpr double kDefaultSupportCutoff = 1e-12;

/// Eigensystem of a hermitian operator. Eigenvalues ascend; eigenvector
/// columns match them. support_rank counts eigenvalues above
/// cutoff * max(1, spectral norm).
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
  Eigen::Index support_rank = 0;

  double spectral_norm() const {
    if (eigenvalues.size() == 0) return 0.0;
    return std::max(std::abs(eigenvalues(0)),
                    std::abs(eigenvalues(eigenvalues.size() - 1)));
  }
};

/// op extended to `ambient` acting as the identity off its support.
LocalOperator embed(const LocalOperator& op, const Region& ambient);

/// Partial trace onto `keep` (a subset of op's support). The adjoint of
/// embed: Tr(partial_trace(X) B) = Tr(X embed(B)).
LocalOperator partial_trace(const LocalOperator& op, const Region& keep);

/// Dense hermitian eigendecomposition. Input must be hermitian-flagged; it
/// is symmetrized (A+A*)/2 first. Three deterministic backends: exactly
/// diagonal input, exactly real input (LAPACK dsyevr), complex (zheevr).
SpectralDecomposition herm_eig(const LocalOperator& op,
                               double support_cutoff = kDefaultSupportCutoff);

enum class MatrixFn { exp, log_on_support };

struct MatrixFnResult {
  LocalOperator op;
  /// Rank of the support projector (log_on_support); full dimension for exp.
  Eigen::Index support_rank;
};

/// exp, or log restricted to the support subspace (0 on its complement).
/// log_on_support throws DomainError when an eigenvalue is below -cutoff.
MatrixFnResult matrix_function(const LocalOperator& op, MatrixFn fn,
                               double support_cutoff = kDefaultSupportCutoff);

/// Largest singular value; max |eigenvalue| for hermitian-flagged input.
double operator_norm(const LocalOperator& op);

}  // namespace qgibbs
