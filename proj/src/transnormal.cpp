#include "sp2/transnormal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sp2/curvature.hpp"
#include "sp2/errors.hpp"
#include "sp2/plane_search.hpp"
#include "sp2/sampling.hpp"

namespace sp2 {

namespace {

constexpr double kPivotTolerance = 1e-10;
constexpr double kHorizontalTolerance = 1e-9;

void require_nonneg(const Metricd& m) {
  if (!m.nonneg_curved()) throw NotApplicable("certificate requires r1 + r2 <= 2");
}

const std::array<Quatd, 3> kImaginaryUnits{Quatd::i(), Quatd::j(), Quatd::k()};

}  // namespace

double rbar1(double theta, const Metricd& m) { return 2 * lambda_theta(theta, m).lambda; }

Metricd induced_metric(double theta, const Metricd& m) { return {rbar1(theta, m), m.r2}; }

double curvature_sigma_lift(const Elementd& a, const Elementd& b, double theta, const Metricd& m) {
  return curvature_R_closed(a, b, induced_metric(theta, m));
}

Elementd sigma7_action_field(const Sp2d& q, const Quatd& u) {
  const auto& qm = q.matrix();
  const QuatMatrix<double> field =
      qm.adjoint() * QuatMatrix<double>::diag(u, u) * qm - QuatMatrix<double>::diag(u, Quatd{});
  return field.to_algebra();
}

Sigma7Frame sigma7_frame(const ChartPoint& base, const Metricd& m) {
  const Metricd g = induced_metric(base.theta, m);
  std::array<Elementd, 3> vertical;
  for (int p = 0; p < 3; ++p) vertical[p] = sigma7_action_field(base.q, kImaginaryUnits[p]);

  std::array<Elementd, 3> vertical_on;
  for (int p = 0; p < 3; ++p) {
    Elementd v = vertical[p];
    for (int q = 0; q < p; ++q) v -= vertical_on[q] * inner_gr(v, vertical_on[q], g);
    const double n = std::sqrt(squared_norm_gr(v, g));
    if (n < kPivotTolerance) throw DegenerateFrame("action fields are linearly dependent");
    vertical_on[p] = v * (1 / n);
  }

  // Greedy pivoted Gram-Schmidt of the standard frame against the vertical span.
  std::array<Elementd, kAlgebraDim> candidates = standard_basis(g);
  for (auto& c : candidates)
    for (const auto& v : vertical_on) c -= v * inner_gr(c, v, g);

  std::array<Elementd, 7> horizontal;
  std::array<bool, kAlgebraDim> used{};
  for (int h = 0; h < 7; ++h) {
    int pick = -1;
    double best = -1;
    for (int p = 0; p < kAlgebraDim; ++p) {
      if (used[p]) continue;
      const double n = squared_norm_gr(candidates[p], g);
      if (n > best + 1e-14) {
        best = n;
        pick = p;
      }
    }
    if (pick < 0 || std::sqrt(best) < kPivotTolerance) throw DegenerateFrame("horizontal pivot vanished");
    used[pick] = true;
    horizontal[h] = candidates[pick] * (1 / std::sqrt(best));
    for (int p = 0; p < kAlgebraDim; ++p)
      if (!used[p]) candidates[p] -= horizontal[h] * inner_gr(candidates[p], horizontal[h], g);
  }
  return {base, g, vertical, vertical_on, horizontal};
}

Elementd vertical_part(const Elementd& xi, const Sigma7Frame& frame) {
  Elementd v;
  for (const auto& e : frame.vertical_orthonormal) v += e * inner_gr(xi, e, frame.metric);
  return v;
}

double horizontality_defect(const Elementd& xi, const Sigma7Frame& frame) {
  const double n = std::sqrt(squared_norm_gr(xi, frame.metric));
  if (n == 0) return 0;
  double worst = 0;
  for (const auto& e : frame.vertical_orthonormal)
    worst = std::max(worst, std::abs(inner_gr(xi, e, frame.metric)) / n);
  return worst;
}

OneillCurvature oneill_sectional(const Elementd& a, const Elementd& b, const Sigma7Frame& frame) {
  if (horizontality_defect(a, frame) > kHorizontalTolerance ||
      horizontality_defect(b, frame) > kHorizontalTolerance)
    throw NotTangent("O'Neill curvature expects horizontal vectors");
  const double gram = gram_determinant(a, b, frame.metric);
  if (!(gram > kGramTolerance)) throw DegeneratePlane("O'Neill curvature of a degenerate plane");
  const Elementd v = vertical_part(bracket(a, b), frame);
  OneillCurvature k;
  k.base_K = curvature_R_closed(a, b, frame.metric) / gram;
  k.vertical_term = 0.75 * squared_norm_gr(v, frame.metric) / gram;
  k.K = k.base_K + k.vertical_term;
  return k;
}

namespace {

Elementd combine(const Eigen::VectorXd& coeffs, const std::array<Elementd, 7>& basis) {
  Elementd e;
  for (int i = 0; i < 7; ++i) e += basis[i] * coeffs(i);
  return e;
}

}  // namespace

QuasiPositivityResult quasi_positive_check(double theta, const Metricd& m, int starts, int iters,
                                           std::uint64_t seed) {
  require_nonneg(m);
  const Sigma7Frame frame = sigma7_frame(ChartPoint(Sp2d::identity(), theta), m);
  PlaneSearchOptions options;
  options.starts = starts;
  options.iters = iters;
  options.seed = seed;
  const PlaneObjective objective = [&frame](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return curvature_R_closed(combine(a, frame.horizontal_basis), combine(b, frame.horizontal_basis),
                              frame.metric);
  };
  const PlaneSearchResult best = minimize_over_planes(7, objective, options);
  return {best.value, combine(best.a, frame.horizontal_basis), combine(best.b, frame.horizontal_basis)};
}

Eigen::Matrix<double, 7, 7> horizontal_ricci_form(const Sigma7Frame& frame) {
  const auto& h = frame.horizontal_basis;
  const auto& g = frame.metric;
  auto partial = [&](const Elementd& x) {
    double s = 0;
    for (const auto& e : h) s += curvature_R_closed(x, e, g);
    return s;
  };
  Eigen::Matrix<double, 7, 7> form;
  std::array<double, 7> diag{};
  for (int p = 0; p < 7; ++p) diag[p] = form(p, p) = partial(h[p]);
  for (int p = 0; p < 7; ++p)
    for (int q = p + 1; q < 7; ++q) form(p, q) = form(q, p) = 0.5 * (partial(h[p] + h[q]) - diag[p] - diag[q]);
  return form;
}

RicciBoundResult ricci_lower_bound(double theta, const Metricd& m, int sample_points, std::uint64_t seed) {
  require_nonneg(m);
  require_chart(theta);
  if (sample_points < 1) throw GeometryError("ricci bound needs at least one sample point");
  RicciBoundResult result;
  result.bound = std::numeric_limits<double>::infinity();
  result.all_directions_bound = std::numeric_limits<double>::infinity();
  result.sample_points = sample_points;
  for (int s = 0; s < sample_points; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Sigma7Frame frame = sigma7_frame(ChartPoint(random_sp2(rng), theta), m);
    const auto form = horizontal_ricci_form(frame);
    result.bound = std::min(result.bound, form.diagonal().minCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 7, 7>> solver(form, Eigen::EigenvaluesOnly);
    result.all_directions_bound = std::min(result.all_directions_bound, solver.eigenvalues()(0));
  }
  return result;
}

CurvatureCertificate certify_sigma7(double theta, const Metricd& m, int starts, int iters, int samples,
                                    std::uint64_t seed) {
  const auto quasi = quasi_positive_check(theta, m, starts, iters, seed);
  const auto ricci = ricci_lower_bound(theta, m, samples, seed);
  CurvatureCertificate cert;
  cert.theta = theta;
  cert.metric = m;
  cert.min_horizontal_K_at_identity = quasi.min_K;
  cert.min_ricci_lower_bound = ricci.bound;
  cert.min_ricci_all_directions = ricci.all_directions_bound;
  cert.samples = samples;
  cert.starts = starts;
  cert.seed = seed;
  return cert;
}

double mean_curvature_sigma7(const ChartPoint& base, const Metricd& m) {
  const double lambda_prime = lambda_theta(base.theta, m).lambda_prime;
  const Sigma7Frame frame = sigma7_frame(base, m);
  double h = 0;
  for (const auto& e : frame.horizontal_basis) h += lambda_prime / 2 * squared_norm(e.x());
  return h;
}

double mean_curvature_sigma7_identity_closed(double theta, const Metricd& m) {
  return 3 * principal_curvature(theta, m);
}

double mean_curvature_sigma7_diag_i_closed(double theta, const Metricd& m) {
  const double lambda = lambda_theta(theta, m).lambda;
  const double mu = principal_curvature(theta, m);
  return 3 * mu - 16 * lambda * mu / (8 * lambda + m.r2);
}

TangentM14 pi2_vertical(const M14Point& b, const Quatd& u) {
  const auto& qm = b.q.matrix();
  const Elementd xi = (qm.adjoint() * QuatMatrix<double>::diag(u, u) * qm).to_algebra();
  return {xi, 0.0, -(b.t2 * u)};
}

TransnormalCheck transnormal_check(const M14Point& b, const Metricd& m) {
  const TangentM14 grad = gradient_f(b);
  TransnormalCheck check;
  for (const auto& u : kImaginaryUnits)
    check.max_vertical_product = std::max(check.max_vertical_product, std::abs(metric_m14(grad, pi2_vertical(b, u), m)));
  const auto [vertical, horizontal] = decompose_pi1(b, grad, m);
  check.residual = std::abs(metric_m14(horizontal, horizontal, m) - (1 - b.t1 * b.t1));
  return check;
}

TransnormalCheck transnormal_residual(double theta, const Metricd& m) {
  require_chart(theta);
  return transnormal_check(M14Point::on_chart(Sp2d::identity(), theta), m);
}

}  // namespace sp2
