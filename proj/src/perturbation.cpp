#include "qgibbs/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/kernels.hpp"

namespace qgibbs {

namespace {

// log of a full-rank density from its cached spectrum
Matrix log_density(const DensityMatrix& rho, double support_cutoff, const char* who) {
  const SpectralDecomposition& e = rho.spectrum();
  const double thr = support_cutoff * std::max(1.0, e.spectral_norm());
  if (e.eigenvalues(0) <= thr) {
    std::ostringstream os;
    os << who << ": state is rank-deficient (min eigenvalue " << e.eigenvalues(0)
       << "); log undefined on the full space";
    throw DomainError(os.str());
  }
  const Eigen::Index n = rho.dim();
  Matrix scaled = e.eigenvectors;
  for (Eigen::Index j = 0; j < n; ++j)
    kernels::scale(cplx(std::log(e.eigenvalues(j)), 0.0), scaled.col(j).data(),
                   static_cast<std::size_t>(n));
  Matrix out = scaled * e.eigenvectors.adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  return out;
}

}  // namespace

Matrix log_density_matrix(const DensityMatrix& rho, double support_cutoff) {
  return log_density(rho, support_cutoff, "log_density_matrix");
}

PerturbResult perturb(const DensityMatrix& rho, const LocalOperator& h,
                      double support_cutoff) {
  if (!h.hermitian_flagged())
    throw ValidationError("perturb: h must be hermitian-flagged");
  if (!(h.support() == rho.support()) || h.site_dim() != rho.site_dim())
    throw ContainmentError("perturb: h must live on the state's support");
  const Matrix log_rho = log_density(rho, support_cutoff, "perturb");
  LocalOperator exponent =
      rho.op().with_matrix(log_rho + 0.5 * (h.matrix() + h.matrix().adjoint()));
  MatrixFnResult unnorm = matrix_function(exponent, MatrixFn::exp, support_cutoff);
  const double weight = unnorm.op.trace().real();
  LocalOperator normalized = unnorm.op.with_matrix(unnorm.op.matrix() / weight);
  return PerturbResult{std::move(unnorm.op), weight, DensityMatrix(std::move(normalized))};
}

PbGtResult pb_gt_check(const DensityMatrix& rho, const LocalOperator& h,
                       double support_cutoff) {
  const PerturbResult p = perturb(rho, h, support_cutoff);
  const double mean_h = trace_product(rho.op(), h).real();
  const MatrixFnResult exp_h = matrix_function(h, MatrixFn::exp, support_cutoff);
  const double rho_exp_h = trace_product(rho.op(), exp_h.op).real();
  const double h_norm = herm_eig(h).spectral_norm();
  PbGtResult out;
  out.weight = p.weight;
  out.pb_slack = p.weight - std::exp(mean_h);
  out.gt_slack = rho_exp_h - p.weight;
  out.norm_lower_slack = p.weight - std::exp(-h_norm);
  out.norm_upper_slack = std::exp(h_norm) - p.weight;
  return out;
}

GibbsProductResult gibbs_product_check(const Potential& pot, double beta,
                                       const Region& inner, const Region& ambient) {
  const Region rest = ambient.set_minus(inner);
  if (inner.empty() || rest.empty())
    throw GeometryError("gibbs_product_check: inner must be a proper nonempty subset");

  GibbsEngine ambient_engine(pot, beta, ambient);
  const DensityMatrix psi(ambient_engine.density());

  const LocalOperator w = surface_energy(pot, inner, ambient);  // checks the collar
  LocalOperator h = embed(w, ambient);
  h = h.with_matrix(beta * h.matrix());

  const PerturbResult p = perturb(psi, h);

  GibbsEngine inner_engine(pot, beta, inner);
  GibbsEngine rest_engine(pot, beta, rest);
  const DensityMatrix ig_inner(inner_engine.density());
  const DensityMatrix ig_rest(rest_engine.density());

  const DensityMatrix reduced(partial_trace(p.normalized.op(), inner));
  const DensityMatrix product(tensor_product(ig_inner.op(), ig_rest.op()));

  GibbsProductResult out;
  out.marginal_gap = trace_distance(reduced, ig_inner);
  out.factorization_gap = trace_distance(p.normalized, product);
  return out;
}

LogDensityGapResult log_density_gap(const Potential& pot, double beta, const Region& region,
                                    const DensityMatrix& psi_marginal,
                                    const std::vector<DensityMatrix>& omegas,
                                    double support_cutoff) {
  if (!(psi_marginal.support() == region))
    throw ContainmentError("log_density_gap: psi marginal must live on the region");
  GibbsEngine engine(pot, beta, region);
  const DensityMatrix ig(engine.density());

  const Matrix log_ig = log_density(ig, support_cutoff, "log_density_gap(rho^IG)");
  const Matrix log_psi = log_density(psi_marginal, support_cutoff, "log_density_gap(psi)");
  LocalOperator gap_op = ig.op().with_matrix(log_ig - log_psi);

  LogDensityGapResult out;
  out.gap_norm = herm_eig(gap_op).spectral_norm();
  out.per_site = out.gap_norm / static_cast<double>(region.volume());
  const LocalOperator w = surface_energy(pot, region, region.enlarged(pot.range()));
  out.surface_norm = operator_norm(w);
  out.ratio_vs_surface =
      (beta * out.surface_norm > 0.0) ? out.gap_norm / (beta * out.surface_norm) : 0.0;

  for (const DensityMatrix& omega : omegas) {
    const double lhs = relative_entropy(omega, ig, support_cutoff) -
                       relative_entropy(omega, psi_marginal, support_cutoff);
    const LocalOperator diff = ig.op().with_matrix(log_psi - log_ig);
    const double rhs = trace_product(omega.op(), diff).real();
    out.identity_residuals.push_back(std::abs(lhs - rhs));
  }
  return out;
}

}  // namespace qgibbs
