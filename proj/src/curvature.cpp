#include "sp2/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "sp2/errors.hpp"
#include "sp2/plane_search.hpp"

namespace sp2 {

Elementd koszul_connection(const Elementd& a, const Elementd& b, const Metricd& m) {
  // Left-invariant fields have constant inner products, so only the bracket terms survive:
  // 2<nabla_a b, e> = <[a,b], e> - <[b,e], a> + <[e,a], b>.
  const auto frame = standard_basis(m);
  const Elementd ab = bracket(a, b);
  Elementd result;
  for (const auto& e : frame) {
    const double coeff =
        0.5 * (inner_gr(ab, e, m) - inner_gr(bracket(b, e), a, m) + inner_gr(bracket(e, a), b, m));
    result += e * coeff;
  }
  return result;
}

double curvature_R_oracle(const Elementd& a, const Elementd& b, const Metricd& m) {
  // R(a,b)a = nabla_b nabla_a a - nabla_a nabla_b a + nabla_[a,b] a
  const Elementd term1 = koszul_connection(b, koszul_connection(a, a, m), m);
  const Elementd term2 = koszul_connection(a, koszul_connection(b, a, m), m);
  const Elementd term3 = koszul_connection(bracket(a, b), a, m);
  return inner_gr(term1 - term2 + term3, b, m);
}

double sectional_curvature(const Elementd& a, const Elementd& b, const Metricd& m) {
  const double gram = gram_determinant(a, b, m);
  if (!(gram > kGramTolerance)) throw DegeneratePlane("sectional curvature of a degenerate plane");
  return curvature_R_closed(a, b, m) / gram;
}

double ricci(const Elementd& xi, const Metricd& m) {
  if (std::abs(squared_norm_gr(xi, m) - 1.0) > 1e-9) throw NotUnit("ricci expects a g_r-unit vector");
  double sum = 0;
  for (const auto& e : standard_basis(m)) sum += curvature_R_closed(xi, e, m);
  return sum;
}

namespace {

double ricci_quadratic_oracle(const Elementd& xi, const std::array<Elementd, kAlgebraDim>& frame,
                              const Metricd& m) {
  double sum = 0;
  for (const auto& e : frame) sum += curvature_R_oracle(xi, e, m);
  return sum;
}

}  // namespace

RicciMatrix ricci_matrix(const Metricd& m) {
  const auto frame = standard_basis(m);
  RicciMatrix ric;
  Eigen::Matrix<double, kAlgebraDim, 1> diag;
  for (int p = 0; p < kAlgebraDim; ++p) diag(p) = ricci_quadratic_oracle(frame[p], frame, m);
  for (int p = 0; p < kAlgebraDim; ++p) {
    ric(p, p) = diag(p);
    for (int q = p + 1; q < kAlgebraDim; ++q) {
      const double mixed = ricci_quadratic_oracle(frame[p] + frame[q], frame, m);
      ric(p, q) = ric(q, p) = 0.5 * (mixed - diag(p) - diag(q));
    }
  }
  return ric;
}

Eigen::Matrix<double, kAlgebraDim, 1> ricci_diagonal_closed(const Metricd& m) {
  Eigen::Matrix<double, kAlgebraDim, 1> d;
  const double x = 2 * m.r1 + 4 / m.r1;
  const double y = 12 - 3 * (m.r1 + m.r2);
  const double z = 2 * m.r2 + 4 / m.r2;
  d << x, x, x, y, y, y, y, z, z, z;
  return d;
}

EinsteinReport is_einstein(const Metricd& m, double tol) {
  if (!(tol > 0)) throw GeometryError("einstein tolerance must be positive");
  EinsteinReport report{m, ricci_matrix(m), false, std::nullopt, 0.0};
  const auto& ric = report.ricci_matrix;
  const auto diag = ric.diagonal();
  const double spread = diag.maxCoeff() - diag.minCoeff();
  RicciMatrix off = ric;
  off.diagonal().setZero();
  report.deviation = std::max(spread, off.cwiseAbs().maxCoeff());
  report.is_einstein = report.deviation <= tol;
  if (report.is_einstein) report.constant_c = diag.mean();
  return report;
}

double einstein_mixed_plane_residual(const Metricd& m, double c) {
  const auto e = standard_basis(m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double worst = 0;
  for (int i = 0; i < kAlgebraDim; ++i) {
    for (int j = i + 1; j < kAlgebraDim; ++j) {
      const Elementd mixed = (e[i] + e[j]) * inv_sqrt2;
      double sum = 0;
      for (int k = 0; k < kAlgebraDim; ++k) {
        if (k == i || k == j) continue;
        sum += curvature_R_closed(mixed, e[k], m);
      }
      const double expected = c - curvature_R_closed(e[i], e[j], m);
      worst = std::max(worst, std::abs(sum - expected));
    }
  }
  return worst;
}

PlaneWitness min_sectional_curvature(const Metricd& m, int starts, int iters, std::uint64_t seed) {
  PlaneSearchOptions options;
  options.starts = starts;
  options.iters = iters;
  options.seed = seed;
  // Frame coordinates are g_r-orthonormal, so the numerator is already the sectional curvature.
  const PlaneObjective objective = [&m](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return curvature_R_closed(from_frame_coords(a, m), from_frame_coords(b, m), m);
  };
  const PlaneSearchResult best = minimize_over_planes(kAlgebraDim, objective, options);
  PlaneWitness w;
  w.xi1 = from_frame_coords(best.a, m);
  w.xi2 = from_frame_coords(best.b, m);
  w.unnormalized_R = curvature_R_closed(w.xi1, w.xi2, m);
  w.sectional_K = sectional_curvature(w.xi1, w.xi2, m);
  return w;
}

double NegativeWitness::max_vanishing_residual() const {
  return std::max({gamma_residual, first_residual, second_residual});
}

double default_witness_t(const Metricd& m) {
  return std::max(10.0, 4 * (std::abs(2 * m.r1 - 3) + std::abs(2 * m.r2 - 3)) / std::min(m.r1, m.r2));
}

namespace {

// Smaller real root of t^2 s (r - s) = rhs, i.e. s^2 - r s + rhs/t^2 = 0.
double small_root(double r, double rhs, double t) {
  const double disc = r * r - 4 * rhs / (t * t);
  if (disc < 0) throw DiscriminantNegative("witness parameter t too small for a real root");
  const double sq = std::sqrt(disc);
  // Product of roots is rhs/t^2; dividing avoids cancellation in (r - sq)/2.
  const double large = 0.5 * (r + sq);
  return (rhs / (t * t)) / large;
}

}  // namespace

NegativeWitness negative_plane_witness(const Metricd& m, double t) {
  if (m.r1 + m.r2 <= 2) throw NotApplicable("negative witness requires r1 + r2 > 2");
  if (!(t > 0)) throw DiscriminantNegative("witness parameter t must be positive");
  NegativeWitness w;
  w.t = t;
  w.u = small_root(m.r2, 2 * m.r1 - 3, t);
  w.v = small_root(m.r1, 2 * m.r2 - 3, t);

  const Quatd i = Quatd::i();
  const Quatd j = Quatd::j();
  w.plane.xi1 = Elementd{i * (t * w.u), -j, i * (t * w.v)};
  w.plane.xi2 = Elementd{j * (t * (m.r2 - w.u)), i, j * (t * (m.r1 - w.v))};

  const auto inv = abg(w.plane.xi1, w.plane.xi2);
  w.alpha1_norm = norm(inv.alpha1);
  w.gamma_residual = norm(inv.gamma1 * m.r1 + inv.gamma2 * m.r2);
  w.first_residual = norm(inv.beta1 + inv.alpha1 * (3 - 2 * m.r1));
  w.second_residual = norm(inv.beta2 + inv.alpha2 * (3 - 2 * m.r2));
  const double s1 = 1 - m.r1;
  const double s2 = 1 - m.r2;
  w.predicted_R = 0.5 * (s1 * s1 * s1 + s2 * s2 * s2) * squared_norm(inv.alpha1);
  w.plane.unnormalized_R = curvature_R_closed(w.plane.xi1, w.plane.xi2, m);
  w.plane.sectional_K = sectional_curvature(w.plane.xi1, w.plane.xi2, m);
  w.oracle_R = curvature_R_oracle(w.plane.xi1, w.plane.xi2, m);
  return w;
}

NegativeWitness negative_plane_witness(const Metricd& m) {
  return negative_plane_witness(m, default_witness_t(m));
}

}  // namespace sp2
