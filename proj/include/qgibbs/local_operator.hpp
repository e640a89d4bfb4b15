#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "qgibbs/region.hpp"

namespace qgibbs {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hard cap on the Hilbert-space dimension of any dense ambient operator.
/// Default 2^16; configurable once at startup.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// site_dim^volume with overflow and cap checks; `what` names the offender
/// in the ResourceError message.
std::size_t checked_dimension(int site_dim, std::size_t volume, const std::string& what);

/// A dense operator on the tensor factors of a finite set of sites.
///
/// Basis convention: support sites in canonical (lexicographic) order, the
/// first site carrying the most significant digit, so index
/// I = sum_k d_k * n^(m-1-k). All embed/partial-trace pairs share this
/// convention.
class LocalOperator {
 public:
  /// General operator; hermitian=true additionally verifies
  /// ||A - A*||_F <= 1e-12 * ||A||_F and records the flag.
  LocalOperator(Region support, int site_dim, Matrix matrix, bool hermitian = false);

  static LocalOperator zero(Region support, int site_dim, bool hermitian = true);
  static LocalOperator identity(Region support, int site_dim);

  const Region& support() const { return support_; }
  int site_dim() const { return site_dim_; }
  const Matrix& matrix() const { return matrix_; }
  Matrix& mutable_matrix() { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  bool hermitian_flagged() const { return hermitian_; }

  /// True when every entry has exactly zero imaginary part.
  bool is_real() const;

  cplx trace() const { return matrix_.trace(); }
  double frobenius_norm() const { return matrix_.norm(); }

  /// Same support/site_dim/flag, new matrix.
  LocalOperator with_matrix(Matrix m) const;

 private:
  Region support_;
  int site_dim_ = 2;
  Matrix matrix_;
  bool hermitian_ = false;
};

/// Tr(a * b) for operators on the same support. Uses the SIMD dot kernel
/// when one factor is hermitian-flagged.
cplx trace_product(const LocalOperator& a, const LocalOperator& b);

/// Tensor product of operators on disjoint supports; factors are interleaved
/// into canonical site order.
LocalOperator tensor_product(const LocalOperator& a, const LocalOperator& b);

}  // namespace qgibbs
