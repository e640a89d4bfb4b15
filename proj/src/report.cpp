#include "qgibbs/report.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/io.hpp"
#include "qgibbs/kernels.hpp"
#include "qgibbs/selftest.hpp"

namespace qgibbs {

namespace {

nlohmann::json base_summary(const std::string& subcommand, const ExperimentConfig& cfg) {
  return {{"artifact", version_string()},
          {"schema_version", 1},
          {"subcommand", subcommand},
          {"kernels", kernels::isa_name(kernels::active())},
          {"config", cfg.to_json()}};
}

bool strictly_decreasing(const std::vector<double>& v) {
  if (v.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] < v[i])) return false;
  return true;
}

}  // namespace

nlohmann::json TheoremReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json rj = {{"volume", r.volume},
                         {"rel_entropy_vs_internal_gibbs_per_site", json_number(r.rel_ig_per_site)},
                         {"rel_entropy_vs_psi_per_site", json_number(r.rel_psi_per_site)},
                         {"difference_per_site", json_number(r.difference_per_site)},
                         {"gap_expectation_per_site", json_number(r.gap_expectation_per_site)},
                         {"identity_residual", json_number(r.identity_residual)},
                         {"buffer_drift", json_number(r.drift)}};
    if (!r.error.empty()) rj["error"] = r.error;
    rows_j.push_back(rj);
  }
  return {{"rows", rows_j},
          {"information_rate", json_number(info_rate)},
          {"information_rate_fit_residual", json_number(info_rate_residual)},
          {"relative_entropy_density", json_number(rel_density)},
          {"relative_entropy_density_fit_residual", json_number(rel_density_residual)},
          {"gap_estimate", json_number(gap_estimate)},
          {"final_difference_per_site", json_number(final_difference)},
          {"max_buffer_drift", json_number(max_drift)},
          {"difference_trend_decreasing", trend_decreasing},
          {"status", status},
          {"notes", notes},
          {"config", resolved_config},
          {"artifact", version_string()}};
}

TheoremReport verify_theorem1(const ExperimentConfig& cfg) {
  const Potential pot = cfg.potential();
  return verify_theorem1(cfg, cfg.omega_family(),
                         StateFamily::internal_gibbs(pot, cfg.beta, cfg.bc()),
                         StateFamily::buffered_gibbs(pot, cfg.beta, cfg.buffer, cfg.bc()));
}

TheoremReport verify_theorem1(const ExperimentConfig& cfg, const StateFamily& omega,
                              const StateFamily& ig, const StateFamily& psi) {
  cfg.apply();
  TheoremReport report;
  report.resolved_config = cfg.to_json();

  for (const Region& box : cfg.boxes()) {
    TheoremRow row;
    row.volume = box.volume();
    try {
      const DensityMatrix w = omega.marginal(box);
      const DensityMatrix ig_m = ig.marginal(box);
      const DensityMatrix psi_m = psi.marginal(box);
      const double rel_ig = relative_entropy(w, ig_m);
      const double rel_psi = relative_entropy(w, psi_m);
      const Matrix log_ig = log_density_matrix(ig_m);
      const Matrix log_psi = log_density_matrix(psi_m);
      const LocalOperator diff = ig_m.op().with_matrix(log_psi - log_ig);
      const double expectation = trace_product(w.op(), diff).real();
      const double v = static_cast<double>(row.volume);
      row.rel_ig_per_site = rel_ig / v;
      row.rel_psi_per_site = rel_psi / v;
      row.difference_per_site = std::abs(rel_ig - rel_psi) / v;
      row.gap_expectation_per_site = expectation / v;
      row.identity_residual = std::abs((rel_ig - rel_psi) - expectation);
      if (cfg.buffer >= 1)
        row.drift = psi.buffered_drift(box, cfg.buffer - 1, cfg.buffer);
    } catch (const ResourceError& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<std::pair<std::size_t, double>> ig_points, psi_points;
  std::vector<double> differences;
  for (const auto& r : report.rows) {
    if (!r.error.empty()) {
      report.notes.push_back("volume " + std::to_string(r.volume) + ": " + r.error);
      continue;
    }
    ig_points.emplace_back(r.volume, r.rel_ig_per_site);
    psi_points.emplace_back(r.volume, r.rel_psi_per_site);
    differences.push_back(r.difference_per_site);
    if (std::isfinite(r.drift))
      report.max_drift = std::isfinite(report.max_drift)
                             ? std::max(report.max_drift, r.drift)
                             : r.drift;
  }

  if (ig_points.empty()) {
    report.status = "fail";
    report.notes.push_back("no volume could be computed within the resource budget");
    return report;
  }

  const ExtrapolationSeries ig_series =
      extrapolate_one_over_v(ig_points, cfg.extrapolation_window);
  const ExtrapolationSeries psi_series =
      extrapolate_one_over_v(psi_points, cfg.extrapolation_window);
  report.info_rate = ig_series.limit_estimate;
  report.info_rate_residual = ig_series.fit_residual;
  report.rel_density = psi_series.limit_estimate;
  report.rel_density_residual = psi_series.fit_residual;
  report.gap_estimate = std::abs(report.info_rate - report.rel_density);
  report.final_difference = differences.back();
  report.trend_decreasing = strictly_decreasing(differences);

  double worst_identity = 0.0;
  for (const auto& r : report.rows)
    if (r.error.empty()) worst_identity = std::max(worst_identity, r.identity_residual);

  const bool complete =
      std::all_of(report.rows.begin(), report.rows.end(),
                  [](const TheoremRow& r) { return r.error.empty(); });

  if (std::isfinite(report.max_drift) && report.max_drift > cfg.tolerances.drift_gate) {
    report.status = "inconclusive";
    std::ostringstream os;
    os << "buffer drift " << report.max_drift << " exceeds the gate "
       << cfg.tolerances.drift_gate << "; the equilibrium approximation cannot support a verdict";
    report.notes.push_back(os.str());
    return report;
  }

  // a flat zero difference (one-site potentials, omega = psi) is already the
  // theorem's conclusion; the strict trend only binds away from it
  const bool all_negligible =
      std::all_of(differences.begin(), differences.end(),
                  [&](double d) { return d <= cfg.tolerances.identity; });
  if (all_negligible)
    report.notes.push_back("difference is identically zero at every volume");

  bool ok = complete;
  if (!complete) report.notes.push_back("incomplete volume range");
  if (!report.trend_decreasing && !all_negligible) {
    ok = false;
    report.notes.push_back("per-site difference is not strictly decreasing");
  }
  if (!(report.final_difference < cfg.tolerances.theorem_final)) {
    ok = false;
    std::ostringstream os;
    os << "final per-site difference " << report.final_difference << " is not below "
       << cfg.tolerances.theorem_final;
    report.notes.push_back(os.str());
  }
  if (worst_identity > cfg.tolerances.identity) {
    ok = false;
    std::ostringstream os;
    os << "log-density identity residual " << worst_identity << " exceeds "
       << cfg.tolerances.identity;
    report.notes.push_back(os.str());
  }
  report.status = ok ? "pass" : "fail";
  return report;
}

nlohmann::json McMillanReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    nlohmann::json pj = {{"volume", p.volume},
                         {"mean", json_number(p.mean)},
                         {"variance", json_number(p.variance)}};
    if (!p.error.empty()) pj["error"] = p.error;
    pts.push_back(pj);
  }
  return {{"points", pts},
          {"entropy_limit", json_number(entropy_limit)},
          {"entropy_fit_residual", json_number(entropy_fit_residual)},
          {"variance_decreasing", variance_decreasing},
          {"final_mean_gap", json_number(final_mean_gap)},
          {"status", status},
          {"notes", notes},
          {"config", resolved_config},
          {"artifact", version_string()}};
}

McMillanReport mcmillan_check(const ExperimentConfig& cfg) {
  cfg.apply();
  const StateFamily family = cfg.omega_family();
  McMillanReport report;
  report.resolved_config = cfg.to_json();

  for (const Region& box : cfg.boxes()) {
    McMillanPoint p;
    p.volume = box.volume();
    try {
      const DensityMatrix rho = family.marginal(box);
      const RealVector& ev = rho.spectrum().eigenvalues;
      // X = -log D commutes with rho, so the moments come from the spectrum
      double s = 0.0, m2 = 0.0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) <= 0.0) continue;
        const double lg = std::log(ev(i));
        s -= ev(i) * lg;
        m2 += ev(i) * lg * lg;
      }
      const double v = static_cast<double>(p.volume);
      p.mean = s / v;
      p.variance = (m2 - s * s) / (v * v);
    } catch (const ResourceError& e) {
      p.error = e.what();
    }
    report.points.push_back(std::move(p));
  }

  std::vector<std::pair<std::size_t, double>> mean_points;
  std::vector<double> variances;
  for (const auto& p : report.points) {
    if (!p.error.empty()) {
      report.notes.push_back("volume " + std::to_string(p.volume) + ": " + p.error);
      continue;
    }
    mean_points.emplace_back(p.volume, p.mean);
    variances.push_back(p.variance);
  }
  if (mean_points.empty()) {
    report.status = "fail";
    report.notes.push_back("no volume could be computed within the resource budget");
    return report;
  }
  const ExtrapolationSeries mean_series =
      extrapolate_one_over_v(mean_points, cfg.extrapolation_window);
  report.entropy_limit = mean_series.limit_estimate;
  report.entropy_fit_residual = mean_series.fit_residual;
  report.variance_decreasing = strictly_decreasing(variances);
  report.final_mean_gap = std::abs(mean_points.back().second - report.entropy_limit);

  const bool variance_negligible =
      std::all_of(variances.begin(), variances.end(),
                  [&](double v) { return v <= cfg.tolerances.identity; });
  if (variance_negligible)
    report.notes.push_back("variance is identically zero at every volume");

  bool ok = report.points.size() == mean_points.size();
  if (!ok) report.notes.push_back("incomplete volume range");
  if (!report.variance_decreasing && !variance_negligible) {
    ok = false;
    report.notes.push_back("variance is not strictly decreasing");
  }
  if (!(report.final_mean_gap <= cfg.tolerances.mcmillan_mean)) {
    ok = false;
    std::ostringstream os;
    os << "last mean deviates from the entropy-density limit by " << report.final_mean_gap;
    report.notes.push_back(os.str());
  }
  report.status = ok ? "pass" : "fail";
  return report;
}

// ---------------------------------------------------------------------------
// subcommand runner
// ---------------------------------------------------------------------------

namespace {

void print_series(const std::string& label, const ExtrapolationSeries& s) {
  std::cout << label << ":\n";
  for (const auto& [v, y] : s.points)
    std::cout << "  V=" << std::setw(4) << v << "  " << std::setprecision(12) << y << "\n";
  std::cout << "  limit " << std::setprecision(12) << s.limit_estimate << "  (fit residual "
            << std::setprecision(3) << s.fit_residual << ")\n";
}

int run_pressure(const ExperimentConfig& cfg) {
  const ExtrapolationSeries s = pressure(cfg.potential(), cfg.beta, cfg.boxes(), cfg.bc());
  write_series_csv(cfg.output_dir, "pressure", s);
  nlohmann::json j = base_summary("pressure", cfg);
  j["pressure"] = series_json(s);
  write_json_file(cfg.output_dir + "/pressure_summary.json", j);
  print_series("pressure per site", s);
  return 0;
}

int run_entropy_density(const ExperimentConfig& cfg) {
  const ExtrapolationSeries s = entropy_density(cfg.omega_family(), cfg.boxes());
  write_series_csv(cfg.output_dir, "entropy_density", s);
  nlohmann::json j = base_summary("entropy-density", cfg);
  j["entropy_density"] = series_json(s);
  write_json_file(cfg.output_dir + "/entropy_density_summary.json", j);
  print_series("entropy density", s);
  return 0;
}

int run_info_rate(const ExperimentConfig& cfg) {
  const ExtrapolationSeries s =
      information_rate(cfg.potential(), cfg.beta, cfg.omega_family(), cfg.boxes(), cfg.bc());
  write_series_csv(cfg.output_dir, "information_rate", s);
  nlohmann::json j = base_summary("info-rate", cfg);
  j["information_rate"] = series_json(s);
  double min_point = 0.0;
  for (const auto& [v, y] : s.points) min_point = std::min(min_point, y);
  j["min_point"] = json_number(min_point);
  write_json_file(cfg.output_dir + "/information_rate_summary.json", j);
  print_series("information rate", s);
  return min_point >= -1e-10 ? 0 : 1;
}

int run_rel_ent_density(const ExperimentConfig& cfg) {
  const Potential pot = cfg.potential();
  const StateFamily omega = cfg.omega_family();
  const StateFamily psi = StateFamily::buffered_gibbs(pot, cfg.beta, cfg.buffer, cfg.bc());
  std::vector<std::pair<std::size_t, double>> points, drifts;
  for (const Region& box : cfg.boxes()) {
    const DensityMatrix w = omega.marginal(box);
    const DensityMatrix psi_m = psi.marginal(box);
    points.emplace_back(box.volume(),
                        relative_entropy(w, psi_m) / static_cast<double>(box.volume()));
    if (cfg.buffer >= 1)
      drifts.emplace_back(box.volume(),
                          psi.buffered_drift(box, cfg.buffer - 1, cfg.buffer));
  }
  const ExtrapolationSeries s = extrapolate_one_over_v(points, cfg.extrapolation_window);
  write_series_csv(cfg.output_dir, "relative_entropy_density", s);
  nlohmann::json j = base_summary("rel-ent-density", cfg);
  j["relative_entropy_density"] = series_json(s);
  if (!drifts.empty()) {
    nlohmann::json dj = nlohmann::json::array();
    for (const auto& [v, d] : drifts) dj.push_back({{"volume", v}, {"drift", json_number(d)}});
    j["buffer_drift"] = dj;
  }
  write_json_file(cfg.output_dir + "/relative_entropy_density_summary.json", j);
  print_series("relative entropy density vs buffered equilibrium", s);
  return 0;
}

int run_mean_field(const ExperimentConfig& cfg) {
  const Potential pot = cfg.potential();
  const MeanFieldResult mf =
      mean_field_scan(pot, cfg.beta, bloch_grid(cfg.mean_field_resolution), cfg.boxes());
  const ExtrapolationSeries p = pressure(pot, cfg.beta, cfg.boxes(), cfg.bc());
  write_series_csv(cfg.output_dir, "mean_field_functional", mf.series);
  nlohmann::json j = base_summary("mean-field", cfg);
  j["maximizer_bloch"] = {mf.bloch[0], mf.bloch[1], mf.bloch[2]};
  j["value"] = json_number(mf.value);
  j["pressure_limit"] = json_number(p.limit_estimate);
  j["functional"] = series_json(mf.series);
  const bool ok = mf.value <= p.limit_estimate + 1e-6;
  j["variational_inequality_ok"] = ok;
  write_json_file(cfg.output_dir + "/mean_field_summary.json", j);
  std::cout << "mean-field maximizer bloch = (" << mf.bloch[0] << ", " << mf.bloch[1] << ", "
            << mf.bloch[2] << "), value " << std::setprecision(12) << mf.value
            << " vs pressure " << p.limit_estimate << "\n";
  return ok ? 0 : 1;
}

int run_gibbs_product(const ExperimentConfig& cfg) {
  const Potential pot = cfg.potential();
  const Region inner = cfg.centered_box(cfg.inner_sites);
  const Region ambient = cfg.centered_box(cfg.ambient_sites);
  const GibbsProductResult r = gibbs_product_check(pot, cfg.beta, inner, ambient);
  nlohmann::json j = base_summary("verify-gibbs-product", cfg);
  j["marginal_gap"] = json_number(r.marginal_gap);
  j["factorization_gap"] = json_number(r.factorization_gap);
  const bool ok = r.marginal_gap <= cfg.tolerances.identity &&
                  r.factorization_gap <= cfg.tolerances.identity;
  j["pass"] = ok;
  write_json_file(cfg.output_dir + "/gibbs_product_summary.json", j);
  std::cout << "gibbs product form: marginal gap " << r.marginal_gap
            << ", factorization gap " << r.factorization_gap << (ok ? "  [ok]" : "  [FAIL]")
            << "\n";
  return ok ? 0 : 1;
}

int run_pb_gt(const ExperimentConfig& cfg) {
  const PropertyResult random_suite = check_pb_gt_random(cfg.seed, 100);
  const PropertyResult commuting = check_pb_gt_commuting(cfg.seed + 1, 50);
  nlohmann::json j = base_summary("pb-gt", cfg);
  j["random_suite"] = {{"pass", random_suite.pass},
                       {"worst", json_number(random_suite.worst)},
                       {"detail", random_suite.detail}};
  j["commuting_cases"] = {{"pass", commuting.pass},
                          {"worst", json_number(commuting.worst)},
                          {"detail", commuting.detail}};
  write_json_file(cfg.output_dir + "/pb_gt_summary.json", j);
  std::cout << random_suite.name << ": " << random_suite.detail << "\n"
            << commuting.name << ": " << commuting.detail << "\n";
  return (random_suite.pass && commuting.pass) ? 0 : 1;
}

int run_log_gap(const ExperimentConfig& cfg) {
  const Potential pot = cfg.potential();
  const StateFamily psi = StateFamily::buffered_gibbs(pot, cfg.beta, cfg.buffer, cfg.bc());
  const StateFamily omega = cfg.omega_family();
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::pair<std::size_t, double>> per_site_points;
  std::vector<double> ratios;
  bool complete = true;
  for (const Region& box : cfg.boxes()) {
    nlohmann::json row = {{"volume", box.volume()}};
    try {
      const DensityMatrix psi_m = psi.marginal(box);
      const LogDensityGapResult g =
          log_density_gap(pot, cfg.beta, box, psi_m, {omega.marginal(box)});
      row["gap_norm"] = json_number(g.gap_norm);
      row["per_site"] = json_number(g.per_site);
      row["surface_norm"] = json_number(g.surface_norm);
      row["ratio_vs_surface"] = json_number(g.ratio_vs_surface);
      row["identity_residual"] = json_number(g.identity_residuals.at(0));
      per_site_points.emplace_back(box.volume(), g.per_site);
      ratios.push_back(g.ratio_vs_surface);
    } catch (const ResourceError& e) {
      row["error"] = e.what();
      complete = false;
    }
    rows.push_back(row);
  }
  nlohmann::json j = base_summary("log-gap", cfg);
  j["rows"] = rows;
  bool decreasing = per_site_points.size() >= 2;
  for (std::size_t i = 0; i + 1 < per_site_points.size(); ++i)
    if (!(per_site_points[i + 1].second < per_site_points[i].second)) decreasing = false;
  bool ratio_bounded = !ratios.empty();
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
    if (ratios[i + 1] > ratios[i] + 1e-9) ratio_bounded = false;
  j["per_site_decreasing"] = decreasing;
  j["ratio_non_increasing"] = ratio_bounded;
  j["complete"] = complete;
  write_json_file(cfg.output_dir + "/log_gap_summary.json", j);
  if (!per_site_points.empty()) {
    ExtrapolationSeries s = extrapolate_one_over_v(per_site_points, cfg.extrapolation_window);
    write_series_csv(cfg.output_dir, "log_gap_per_site", s);
    print_series("log-density gap per site", s);
  }
  return (complete && decreasing && ratio_bounded) ? 0 : 1;
}

int run_verify_theorem1(const ExperimentConfig& cfg) {
  const TheoremReport report = verify_theorem1(cfg);
  ensure_directory(cfg.output_dir);
  write_json_file(cfg.output_dir + "/theorem1_report.json", report.to_json());
  std::vector<std::pair<std::size_t, double>> ig_pts, psi_pts, diff_pts;
  for (const auto& r : report.rows) {
    if (!r.error.empty()) continue;
    ig_pts.emplace_back(r.volume, r.rel_ig_per_site);
    psi_pts.emplace_back(r.volume, r.rel_psi_per_site);
    diff_pts.emplace_back(r.volume, r.difference_per_site);
  }
  if (!ig_pts.empty()) {
    write_series_csv(cfg.output_dir, "theorem1_rel_internal_gibbs",
                     extrapolate_one_over_v(ig_pts, cfg.extrapolation_window));
    write_series_csv(cfg.output_dir, "theorem1_rel_psi",
                     extrapolate_one_over_v(psi_pts, cfg.extrapolation_window));
    write_series_csv(cfg.output_dir, "theorem1_difference",
                     extrapolate_one_over_v(diff_pts, cfg.extrapolation_window));
  }
  std::cout << "theorem-1 run: " << report.status << "\n";
  for (const auto& r : report.rows) {
    std::cout << "  V=" << std::setw(4) << r.volume;
    if (r.error.empty()) {
      std::cout << "  S(w|ig)/V=" << std::setprecision(8) << r.rel_ig_per_site
                << "  S(w|psi)/V=" << r.rel_psi_per_site << "  diff=" << r.difference_per_site
                << "  drift=" << r.drift << "\n";
    } else {
      std::cout << "  [" << r.error << "]\n";
    }
  }
  for (const auto& n : report.notes) std::cout << "  note: " << n << "\n";
  if (report.status == "pass") return 0;
  return report.status == "inconclusive" ? 2 : 1;
}

int run_mcmillan(const ExperimentConfig& cfg) {
  const McMillanReport report = mcmillan_check(cfg);
  ensure_directory(cfg.output_dir);
  write_json_file(cfg.output_dir + "/mcmillan_report.json", report.to_json());
  std::ostringstream csv;
  csv << "volume,mean,variance\n" << std::setprecision(17);
  for (const auto& p : report.points)
    if (p.error.empty()) csv << p.volume << "," << p.mean << "," << p.variance << "\n";
  write_text_file(cfg.output_dir + "/mcmillan.csv", csv.str());
  std::cout << "mcmillan run: " << report.status << "\n";
  for (const auto& p : report.points) {
    std::cout << "  V=" << std::setw(4) << p.volume;
    if (p.error.empty())
      std::cout << "  mean=" << std::setprecision(10) << p.mean
                << "  variance=" << p.variance << "\n";
    else
      std::cout << "  [" << p.error << "]\n";
  }
  for (const auto& n : report.notes) std::cout << "  note: " << n << "\n";
  return report.status == "pass" ? 0 : 1;
}

int run_selftest(const ExperimentConfig& cfg) {
  const std::vector<PropertyResult> results = run_property_suite(cfg.seed);
  nlohmann::json j = base_summary("selftest", cfg);
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"name", r.name},
                   {"pass", r.pass},
                   {"worst", json_number(r.worst)},
                   {"detail", r.detail}});
    all = all && r.pass;
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
  }
  j["results"] = arr;
  j["all_pass"] = all;
  ensure_directory(cfg.output_dir);
  write_json_file(cfg.output_dir + "/selftest_summary.json", j);
  return all ? 0 : 1;
}

}  // namespace

int run_suite(const std::string& subcommand, const ExperimentConfig& cfg) {
  cfg.apply();
  ensure_directory(cfg.output_dir);
  if (subcommand == "pressure") return run_pressure(cfg);
  if (subcommand == "entropy-density") return run_entropy_density(cfg);
  if (subcommand == "info-rate") return run_info_rate(cfg);
  if (subcommand == "rel-ent-density") return run_rel_ent_density(cfg);
  if (subcommand == "mean-field") return run_mean_field(cfg);
  if (subcommand == "verify-gibbs-product") return run_gibbs_product(cfg);
  if (subcommand == "pb-gt") return run_pb_gt(cfg);
  if (subcommand == "log-gap") return run_log_gap(cfg);
  if (subcommand == "verify-theorem1") return run_verify_theorem1(cfg);
  if (subcommand == "mcmillan") return run_mcmillan(cfg);
  if (subcommand == "selftest") return run_selftest(cfg);
  throw ValidationError("unknown subcommand: " + subcommand);
}

}  // namespace qgibbs
