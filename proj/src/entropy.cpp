#include "qgibbs/entropy.hpp"

#include <cmath>
#include <limits>

#include "qgibbs/errors.hpp"
#include "qgibbs/kernels.hpp"

namespace qgibbs {

namespace {

bool both_diagonal(const Matrix& a, const Matrix& b) {
  auto diag = [](const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
    return true;
  };
  return diag(a) && diag(b);
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector& p = rho.spectrum().eigenvalues;
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s -= p(i) * std::log(p(i));
  return s;
}

double relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2,
                        double support_cutoff) {
  if (rho1.dim() != rho2.dim() || rho1.site_dim() != rho2.site_dim())
    throw ValidationError("relative_entropy: dimension mismatch");
  const Eigen::Index n = rho1.dim();
  const SpectralDecomposition& e1 = rho1.spectrum();
  const SpectralDecomposition& e2 = rho2.spectrum();
  const double thr1 = support_cutoff * std::max(1.0, e1.spectral_norm());
  const double thr2 = support_cutoff * std::max(1.0, e2.spectral_norm());

  std::vector<Eigen::Index> supp1, supp2;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (e1.eigenvalues(i) > thr1) supp1.push_back(i);
    if (e2.eigenvalues(i) > thr2) supp2.push_back(i);
  }

  // support containment: ||(I - P2) P1|| = sqrt(1 - sigma_min(V2s* V1s)^2)
  if (static_cast<Eigen::Index>(supp2.size()) < n) {
    if (supp2.size() < supp1.size())
      return std::numeric_limits<double>::infinity();
    Matrix v1(n, supp1.size()), v2(n, supp2.size());
    for (std::size_t k = 0; k < supp1.size(); ++k) v1.col(k) = e1.eigenvectors.col(supp1[k]);
    for (std::size_t k = 0; k < supp2.size(); ++k) v2.col(k) = e2.eigenvectors.col(supp2[k]);
    const Matrix c = v2.adjoint() * v1;
    Eigen::BDCSVD<Matrix> svd(c);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double leak = std::sqrt(std::max(0.0, 1.0 - smin * smin));
    if (leak > 1e-8) return std::numeric_limits<double>::infinity();
  }

  // classical fast path (both states diagonal in the computational basis)
  if (both_diagonal(rho1.matrix(), rho2.matrix())) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = rho1.matrix()(i, i).real();
      if (p <= thr1) continue;
      const double q = rho2.matrix()(i, i).real();
      s += p * (std::log(p) - std::log(q));
    }
    return s;
  }

  double term1 = 0.0;
  for (const Eigen::Index i : supp1)
    term1 += e1.eigenvalues(i) * std::log(e1.eigenvalues(i));

  // Tr rho1 log rho2 = sum_j log(q_j) <v_j| rho1 |v_j> over the support of rho2
  const Matrix w = rho1.matrix() * e2.eigenvectors;
  double cross = 0.0;
  for (const Eigen::Index j : supp2) {
    const cplx overlap = kernels::dotc(e2.eigenvectors.col(j).data(), w.col(j).data(),
                                       static_cast<std::size_t>(n));
    cross += std::log(e2.eigenvalues(j)) * overlap.real();
  }
  return term1 - cross;
}

ExtrapolationSeries entropy_density(const StateFamily& state,
                                    const std::vector<Region>& boxes) {
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(boxes.size());
  for (const Region& box : boxes) {
    const DensityMatrix rho = state.marginal(box);
    points.emplace_back(box.volume(),
                        von_neumann_entropy(rho) / static_cast<double>(box.volume()));
  }
  return extrapolate_one_over_v(std::move(points));
}

}  // namespace qgibbs
