#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sp2/curvature.hpp"
#include "sp2/errors.hpp"
#include "sp2/foliation.hpp"
#include "sp2/lab.hpp"
#include "sp2/sampling.hpp"
#include "sp2/transnormal.hpp"

namespace sp2::lab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1;
constexpr int kDefaultStarts = 64;
constexpr int kDefaultIters = 400;
constexpr int kDefaultThetaGrid = 100;

json quat_json(const Quatd& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

json element_json(const Elementd& e) {
  return {{"x", quat_json(e.x())}, {"y", quat_json(e.y())}, {"z", quat_json(e.z())}};
}

json range_json(const Range& r) { return {{"start", r.start}, {"stop", r.stop}, {"step", r.step}}; }

struct Checks {
  json list = json::array();
  bool all_pass = true;

  // pass iff measured <= threshold
  void at_most(const std::string& name, double measured, double threshold) {
    add(name, measured <= threshold, measured, threshold, "<=");
  }
  void at_least(const std::string& name, double measured, double threshold) {
    add(name, measured >= threshold, measured, threshold, ">=");
  }
  void below(const std::string& name, double measured, double threshold) {
    add(name, measured < threshold, measured, threshold, "<");
  }
  void above(const std::string& name, double measured, double threshold) {
    add(name, measured > threshold, measured, threshold, ">");
  }
  void flag(const std::string& name, bool pass) {
    list.push_back({{"name", name}, {"pass", pass}});
    all_pass = all_pass && pass;
  }

 private:
  void add(const std::string& name, bool pass, double measured, double threshold, const char* relation) {
    // NaN measurements never pass.
    pass = pass && !std::isnan(measured);
    list.push_back({{"name", name}, {"pass", pass}, {"measured", measured}, {"threshold", threshold},
                    {"relation", relation}});
    all_pass = all_pass && pass;
  }
};

int positive_or(const std::optional<int>& v, int fallback, const char* what) {
  const int value = v.value_or(fallback);
  if (value < 1) throw ConfigError(std::string(what) + " must be >= 1");
  return value;
}

double tolerance(const RunConfig& cfg, double fallback) {
  const double tol = cfg.tol.value_or(fallback);
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  return tol;
}

Metricd require_metric(const RunConfig& cfg) {
  if (!cfg.r1 || !cfg.r2) throw ConfigError("--r1 and --r2 are required");
  if (!(*cfg.r1 > 0) || !(*cfg.r2 > 0)) throw ConfigError("r1 and r2 must be positive");
  return {*cfg.r1, *cfg.r2};
}

std::vector<double> thetas(const RunConfig& cfg, std::optional<double> fallback) {
  if (cfg.theta && cfg.theta_grid) throw ConfigError("--theta and --theta-grid are mutually exclusive");
  if (cfg.theta) {
    if (!(*cfg.theta > 0 && *cfg.theta < std::numbers::pi)) throw ConfigError("theta must lie in (0, pi)");
    return {*cfg.theta};
  }
  if (cfg.theta_grid) return theta_grid(*cfg.theta_grid);
  if (fallback) return {*fallback};
  return theta_grid(kDefaultThetaGrid);
}

json config_echo(const RunConfig& cfg) {
  json c = json::object();
  if (cfg.r1) c["r1"] = *cfg.r1;
  if (cfg.r2) c["r2"] = *cfg.r2;
  if (cfg.r1_range) c["r1_range"] = range_json(*cfg.r1_range);
  if (cfg.r2_range) c["r2_range"] = range_json(*cfg.r2_range);
  if (cfg.theta) c["theta"] = *cfg.theta;
  if (cfg.theta_grid) c["theta_grid"] = *cfg.theta_grid;
  if (cfg.samples) c["samples"] = *cfg.samples;
  if (cfg.starts) c["starts"] = *cfg.starts;
  if (cfg.iters) c["iters"] = *cfg.iters;
  if (cfg.seed) c["seed"] = *cfg.seed;
  if (cfg.tol) c["tol"] = *cfg.tol;
  c["format"] = cfg.format == Format::Json ? "json" : "csv";
  return c;
}

Report finish(const RunConfig& cfg, json results, Checks checks, json resolved, std::optional<Table> table = {}) {
  Report report;
  report.document = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                     {"command", command_name(cfg.command)},
                     {"config", config_echo(cfg)},
                     {"resolved", std::move(resolved)},
                     {"seed", cfg.seed.value_or(kDefaultSeed)},
                     {"results", std::move(results)},
                     {"checks", std::move(checks.list)},
                     {"pass", checks.all_pass}};
  report.table = std::move(table);
  report.exit_code = checks.all_pass ? kExitPass : kExitBreach;
  return report;
}

// verify-formula -----------------------------------------------------------

Report verify_formula(const RunConfig& cfg) {
  const int samples = positive_or(cfg.samples, 10000, "samples");
  const double tol = tolerance(cfg, 1e-9);
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  if (cfg.r1.has_value() != cfg.r2.has_value()) throw ConfigError("--r1 and --r2 must be given together");
  const std::optional<Metricd> fixed =
      cfg.r1 ? std::optional<Metricd>(require_metric(cfg)) : std::nullopt;

  double max_abs = 0;
  double max_scaled = 0;
  int worst = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Metricd m = fixed ? *fixed : random_metric(rng);
    const Elementd a = random_element(rng);
    const Elementd b = random_element(rng);
    const double closed = curvature_R_closed(a, b, m);
    const double diff = std::abs(closed - curvature_R_oracle(a, b, m));
    const double scaled = diff / (1 + std::abs(closed));
    max_abs = std::max(max_abs, diff);
    if (scaled > max_scaled) {
      max_scaled = scaled;
      worst = s;
    }
  }
  Checks checks;
  checks.at_most("closed_form_matches_koszul_oracle", max_scaled, tol);
  json results = {{"samples", samples},
                  {"max_abs_residual", max_abs},
                  {"max_scaled_residual", max_scaled},
                  {"worst_sample", worst},
                  {"metric_mode", fixed ? "fixed" : "random"}};
  json resolved = {{"samples", samples}, {"tol", tol}, {"seed", seed}};
  return finish(cfg, std::move(results), std::move(checks), std::move(resolved));
}

// scan-einstein ------------------------------------------------------------

bool classified_einstein(double r1, double r2) {
  const auto near = [](double a, double b) { return std::abs(a - b) < 1e-9; };
  return near(r1, r2) && (near(r1, 1.0) || near(r1, 0.5));
}

Report scan_einstein(const RunConfig& cfg) {
  const double tol = tolerance(cfg, 1e-6);
  const Range default_range{0.25, 1.75, 0.05};
  const Range r1_range = cfg.r1_range.value_or(default_range);
  const Range r2_range = cfg.r2_range.value_or(default_range);
  const auto r1_values = r1_range.values();
  const auto r2_values = r2_range.values();
  if (r1_values.empty() || r2_values.empty()) throw ConfigError("empty parameter grid");
  for (double v : r1_values)
    if (!(v > 0)) throw ConfigError("r1 grid must be positive");
  for (double v : r2_values)
    if (!(v > 0)) throw ConfigError("r2 grid must be positive");

  Table table{{"r1", "r2", "deviation", "is_einstein", "c", "ricci_diagonal_residual"}, {}};
  json passing = json::array();
  bool matches = true;
  double worst_diag = 0;
  for (double r1 : r1_values) {
    for (double r2 : r2_values) {
      const Metricd m(r1, r2);
      const EinsteinReport rep = is_einstein(m, tol);
      const double diag_res =
          (rep.ricci_matrix.diagonal() - ricci_diagonal_closed(m)).cwiseAbs().maxCoeff();
      worst_diag = std::max(worst_diag, diag_res);
      if (rep.is_einstein)
        passing.push_back({{"r1", r1}, {"r2", r2}, {"c", *rep.constant_c}, {"deviation", rep.deviation}});
      matches = matches && (rep.is_einstein == classified_einstein(r1, r2));
      table.rows.push_back({r1, r2, rep.deviation, rep.is_einstein,
                            rep.constant_c ? json(*rep.constant_c) : json(nullptr), diag_res});
    }
  }
  Checks checks;
  checks.flag("einstein_cells_are_exactly_r1_eq_r2_in_{0.5,1}", matches);
  checks.at_most("ricci_diagonal_matches_closed_table", worst_diag, 1e-9);
  json results = {{"cells", r1_values.size() * r2_values.size()},
                  {"einstein_cells", std::move(passing)},
                  {"max_ricci_diagonal_residual", worst_diag}};
  json resolved = {{"r1_range", range_json(r1_range)}, {"r2_range", range_json(r2_range)}, {"tol", tol}};
  return finish(cfg, std::move(results), std::move(checks), std::move(resolved), std::move(table));
}

// min-curvature ------------------------------------------------------------

Report min_curvature(const RunConfig& cfg) {
  const Metricd m = require_metric(cfg);
  const int starts = positive_or(cfg.starts, kDefaultStarts, "starts");
  const int iters = positive_or(cfg.iters, kDefaultIters, "iters");
  const double tol = tolerance(cfg, 1e-9);
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);

  const PlaneWitness best = min_sectional_curvature(m, starts, iters, seed);
  json results = {{"k_min", best.sectional_K},
                  {"plane", {{"xi1", element_json(best.xi1)}, {"xi2", element_json(best.xi2)}}},
                  {"unnormalized_R", best.unnormalized_R},
                  {"nonnegative_regime", m.nonneg_curved()}};
  Checks checks;
  if (m.nonneg_curved()) {
    checks.at_least("k_min_nonnegative", best.sectional_K, -tol);
  } else {
    const NegativeWitness w = negative_plane_witness(m);
    results["analytic_witness"] = {{"t", w.t},
                                   {"u", w.u},
                                   {"v", w.v},
                                   {"xi1", element_json(w.plane.xi1)},
                                   {"xi2", element_json(w.plane.xi2)},
                                   {"unnormalized_R", w.plane.unnormalized_R},
                                   {"predicted_R", w.predicted_R},
                                   {"oracle_R", w.oracle_R},
                                   {"sectional_K", w.plane.sectional_K},
                                   {"alpha1_norm", w.alpha1_norm},
                                   {"gamma_residual", w.gamma_residual},
                                   {"first_residual", w.first_residual},
                                   {"second_residual", w.second_residual}};
    checks.below("k_min_negative", best.sectional_K, 0.0);
    checks.below("witness_curvature_negative", w.plane.unnormalized_R, 0.0);
    checks.at_most("witness_matches_oracle", std::abs(w.plane.unnormalized_R - w.oracle_R), tol);
    checks.at_most("witness_matches_cubic_term",
                   std::abs(w.plane.unnormalized_R - w.predicted_R) / (1 + std::abs(w.predicted_R)), tol);
    checks.at_most("witness_vanishing_conditions", w.max_vanishing_residual(), tol);
    checks.above("witness_alpha1_nonzero", w.alpha1_norm, 0.0);
  }
  json resolved = {{"starts", starts}, {"iters", iters}, {"tol", tol}, {"seed", seed}};
  return finish(cfg, std::move(results), std::move(checks), std::move(resolved));
}

// foliation ----------------------------------------------------------------

std::string spectrum_text(const SpectrumReport& s) {
  std::string out;
  char buf[64];
  for (const auto& [value, mult] : s.eigenvalues) {
    std::snprintf(buf, sizeof buf, "%s%.17g:%d", out.empty() ? "" : ";", value, mult);
    out += buf;
  }
  return out;
}

Report foliation(const RunConfig& cfg) {
  const Metricd m = require_metric(cfg);
  const double tol = tolerance(cfg, 1e-9);
  const auto grid = thetas(cfg, std::nullopt);

  Table table{{"theta", "lambda", "lambda_prime", "mu", "spectrum", "spectrum_deviation", "mean_curvature",
               "mean_curvature_closed", "laplacian", "grad_residual", "laplace_residual"},
              {}};
  json rows = json::array();
  double worst_spectrum = 0, worst_h = 0, worst_grad = 0, worst_lap = 0;
  for (double theta : grid) {
    const auto [lambda, lambda_prime] = lambda_theta(theta, m);
    const double mu = principal_curvature(theta, m);
    const SpectrumReport spectrum = shape_spectrum(theta, m);
    const double spectrum_dev = spectrum_deviation(theta, m);
    const double h_closed = 3 * lambda_prime / (2 * lambda);
    const IsoparametricResiduals iso = isoparametric_residuals(theta, m);
    worst_spectrum = std::max(worst_spectrum, spectrum_dev);
    worst_h = std::max(worst_h, std::abs(spectrum.mean_curvature - h_closed));
    worst_grad = std::max(worst_grad, iso.grad_residual);
    worst_lap = std::max(worst_lap, iso.laplace_residual);

    json eig = json::array();
    for (const auto& [value, mult] : spectrum.eigenvalues) eig.push_back({{"value", value}, {"multiplicity", mult}});
    rows.push_back({{"theta", theta},
                    {"lambda", lambda},
                    {"lambda_prime", lambda_prime},
                    {"mu", mu},
                    {"eigenvalues", std::move(eig)},
                    {"spectrum_deviation", spectrum_dev},
                    {"mean_curvature", spectrum.mean_curvature},
                    {"mean_curvature_closed", h_closed},
                    {"laplacian", iso.laplacian},
                    {"grad_residual", iso.grad_residual},
                    {"laplace_residual", iso.laplace_residual}});
    table.rows.push_back({theta, lambda, lambda_prime, mu, spectrum_text(spectrum), spectrum_dev, spectrum.mean_curvature,
                          h_closed, iso.laplacian, iso.grad_residual, iso.laplace_residual});
  }
  Checks checks;
  checks.at_most("principal_curvatures_match_closed_form", worst_spectrum, tol);
  checks.at_most("mean_curvature_matches_closed_form", worst_h, tol);
  checks.at_most("gradient_residual", worst_grad, tol);
  checks.at_most("laplacian_residual", worst_lap, tol);
  json results = {{"rows", std::move(rows)}, {"points", grid.size()}};
  json resolved = {{"thetas", grid.size()}, {"tol", tol}};
  return finish(cfg, std::move(results), std::move(checks), std::move(resolved), std::move(table));
}

// sigma7 -------------------------------------------------------------------

Report sigma7(const RunConfig& cfg) {
  const Metricd m = require_metric(cfg);
  if (!m.nonneg_curved()) throw ConfigError("sigma7 requires r1 + r2 <= 2");
  const double tol = tolerance(cfg, 1e-9);
  const int samples = positive_or(cfg.samples, 200, "samples");
  const int starts = positive_or(cfg.starts, kDefaultStarts, "starts");
  const int iters = positive_or(cfg.iters, kDefaultIters, "iters");
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  const auto grid = thetas(cfg, std::numbers::pi / 3);

  Checks checks;
  json points = json::array();
  const Sp2d diag_i = Sp2d::diag(Quatd::i(), Quatd::one());
  for (double theta : grid) {
    const CurvatureCertificate cert = certify_sigma7(theta, m, starts, iters, samples, seed);
    const double h_id = mean_curvature_sigma7(ChartPoint(Sp2d::identity(), theta), m);
    const double h_i = mean_curvature_sigma7(ChartPoint(diag_i, theta), m);
    const double h_id_closed = mean_curvature_sigma7_identity_closed(theta, m);
    const double h_i_closed = mean_curvature_sigma7_diag_i_closed(theta, m);
    const TransnormalCheck tn = transnormal_residual(theta, m);

    points.push_back(
        {{"theta", theta},
         {"certificate",
          {{"min_horizontal_K_at_identity", cert.min_horizontal_K_at_identity},
           {"min_ricci_lower_bound", cert.min_ricci_lower_bound},
           {"min_ricci_all_directions", cert.min_ricci_all_directions},
           {"samples", cert.samples},
           {"starts", cert.starts},
           {"seed", cert.seed},
           {"valid", cert.valid()}}},
         {"rbar1", rbar1(theta, m)},
         {"mean_curvature_identity", {{"value", h_id}, {"target", h_id_closed}, {"deviation", std::abs(h_id - h_id_closed)}}},
         {"mean_curvature_diag_i", {{"value", h_i}, {"target", h_i_closed}, {"deviation", std::abs(h_i - h_i_closed)}}},
         {"mean_curvature_gap", h_id - h_i},
         {"transnormal", {{"residual", tn.residual}, {"max_vertical_product", tn.max_vertical_product}}}});

    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "@theta=%.17g", theta);
    checks.above(std::string("quasi_positive_at_identity") + suffix, cert.min_horizontal_K_at_identity, 0.0);
    checks.above(std::string("ricci_lower_bound_positive") + suffix, cert.min_ricci_lower_bound, 0.0);
    checks.at_most(std::string("mean_curvature_identity") + suffix, std::abs(h_id - h_id_closed), tol);
    checks.at_most(std::string("mean_curvature_diag_i") + suffix, std::abs(h_i - h_i_closed), tol);
    checks.at_most(std::string("transnormal_residual") + suffix, tn.residual, tol);
    checks.at_most(std::string("gradient_horizontal") + suffix, tn.max_vertical_product, tol);
  }
  json results = {{"points", std::move(points)}};
  json resolved = {{"samples", samples}, {"starts", starts}, {"iters", iters}, {"tol", tol}, {"seed", seed}};
  return finish(cfg, std::move(results), std::move(checks), std::move(resolved));
}

}  // namespace

Report run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::VerifyFormula: return verify_formula(config);
      case Command::ScanEinstein: return scan_einstein(config);
      case Command::MinCurvature: return min_curvature(config);
      case Command::Foliation: return foliation(config);
      case Command::Sigma7: return sigma7(config);
    }
  } catch (const OutOfChart& e) {
    throw ConfigError(e.what());
  } catch (const NotApplicable& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown command");
}

}  // namespace sp2::lab
