#include "sp2/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "sp2/errors.hpp"

namespace sp2 {

void require_chart(double theta) {
  if (!(theta > 0 && theta < std::numbers::pi))
    throw OutOfChart("theta must lie in the open interval (0, pi)");
}

ChartPoint::ChartPoint(Sp2d q_, double theta_) : q(std::move(q_)), theta(theta_) { require_chart(theta); }

M14Point::M14Point(Sp2d q_, double t1_, Quatd t2_) : q(std::move(q_)), t1(t1_), t2(t2_) {
  if (std::abs(t1 * t1 + squared_norm(t2) - 1) > 1e-9) throw GeometryError("(t1, t2) is not on the unit S^4");
}

M14Point M14Point::on_chart(const Sp2d& q, double theta) {
  return {q, std::cos(theta), Quatd::real(std::sin(theta))};
}

LambdaTheta lambda_theta(double theta, const Metricd& m) {
  require_chart(theta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double denom = 1 + 2 / m.r1 * s * s;
  return {s * s / denom, 2 * s * c / (denom * denom)};
}

double metric_n11(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m) {
  const double lambda = lambda_theta(theta, m).lambda;
  return lambda * inner(a.xi.x(), b.xi.x()) + inner(a.xi.y(), b.xi.y()) +
         m.r2 / 2 * inner(a.xi.z(), b.xi.z()) + a.c * b.c;
}

double metric_m14(const TangentM14& a, const TangentM14& b, const Metricd& m) {
  return inner_gr(a.xi, b.xi, m) + a.s1 * b.s1 + inner(a.s2, b.s2);
}

TangentM14 pi1_vertical(const M14Point& b, const Quatd& u) {
  return {Elementd{-u, Quatd{}, Quatd{}}, 0.0, u * b.t2};
}

std::pair<TangentM14, TangentM14> decompose_pi1(const M14Point& b, const TangentM14& v, const Metricd& m) {
  // <vert(w), v> = <w, -(r1/2) x + s2 conj(t2)> and <vert(w), vert(u)> = (r1/2 + |t2|^2) <w, u>.
  const Quatd rhs = v.xi.x() * (-m.r1 / 2) + v.s2 * conj(b.t2);
  const Quatd u = im(rhs) / (m.r1 / 2 + squared_norm(b.t2));
  const TangentM14 vertical = pi1_vertical(b, u);
  const TangentM14 horizontal{v.xi - vertical.xi, v.s1 - vertical.s1, v.s2 - vertical.s2};
  return {vertical, horizontal};
}

TangentM14 lift_to_m14(const TangentN11& x, double theta) {
  return {x.xi, -x.c * std::sin(theta), Quatd::real(x.c * std::cos(theta))};
}

TangentM14 gradient_f(const M14Point& b) {
  return {Elementd{}, squared_norm(b.t2), -(b.t2 * b.t1)};
}

TangentN11 connection_E(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m) {
  const auto [lambda, lambda_prime] = lambda_theta(theta, m);
  const Quatd& x1 = a.xi.x();
  const Quatd& x2 = b.xi.x();
  const Quatd e11 = (x2 * a.c + x1 * b.c) * (lambda_prime / (2 * lambda));
  const Quatd e12 = (x1 * b.xi.y() + x2 * a.xi.y()) * (0.5 - lambda) +
                    (a.xi.y() * b.xi.z() + b.xi.y() * a.xi.z()) * ((m.r2 - 1) / 2);
  return {Elementd{e11, e12, Quatd{}}, -lambda_prime / 2 * inner(x1, x2)};
}

TangentN11 covariant_derivative(const TangentN11& x, const TangentN11& y, const TangentN11& dy_dtheta,
                                double theta, const Metricd& m) {
  const TangentN11 e = connection_E(x, y, theta, m);
  const Elementd half_bracket = bracket(x.xi, y.xi) * 0.5;
  return {dy_dtheta.xi * x.c + half_bracket + e.xi, x.c * dy_dtheta.c + e.c};
}

double second_fundamental_form(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m) {
  if (a.c != 0 || b.c != 0) throw NotTangent("second fundamental form needs vectors tangent to Sp(2)_theta");
  return lambda_theta(theta, m).lambda_prime / 2 * inner(a.xi.x(), b.xi.x());
}

std::array<TangentN11, 11> n11_frame(double theta, const Metricd& m) {
  const double lambda = lambda_theta(theta, m).lambda;
  const double sx = 1 / std::sqrt(lambda);
  const double sz = std::sqrt(2 / m.r2);
  std::array<TangentN11, 11> e;
  for (int p = 0; p < 3; ++p) e[p] = {Elementd{Quatd::unit(p + 1) * sx, Quatd{}, Quatd{}}, 0.0};
  for (int p = 0; p < 4; ++p) e[3 + p] = {Elementd{Quatd{}, Quatd::unit(p), Quatd{}}, 0.0};
  for (int p = 0; p < 3; ++p) e[7 + p] = {Elementd{Quatd{}, Quatd{}, Quatd::unit(p + 1) * sz}, 0.0};
  e[10] = {Elementd{}, 1.0};
  return e;
}

ShapeMatrix shape_operator(double theta, const Metricd& m) {
  const auto e = n11_frame(theta, m);
  ShapeMatrix s;
  for (int i = 0; i < kAlgebraDim; ++i)
    for (int j = 0; j < kAlgebraDim; ++j) s(i, j) = second_fundamental_form(e[i], e[j], theta, m);
  return s;
}

SpectrumReport shape_spectrum(double theta, const Metricd& m) {
  const ShapeMatrix s = shape_operator(theta, m);
  Eigen::SelfAdjointEigenSolver<ShapeMatrix> solver(s, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();  // ascending

  SpectrumReport report;
  int start = 0;
  while (start < kAlgebraDim) {
    int end = start + 1;
    while (end < kAlgebraDim &&
           values(end) - values(start) <= kEigenClusterTolerance * (1 + std::abs(values(start))))
      ++end;
    report.eigenvalues.emplace_back(values.segment(start, end - start).mean(), end - start);
    start = end;
  }
  report.mean_curvature = s.trace();
  return report;
}

double principal_curvature(double theta, const Metricd& m) {
  require_chart(theta);
  const double s = std::sin(theta);
  return std::cos(theta) / s / (1 + 2 / m.r1 * s * s);
}

double spectrum_deviation(double theta, const Metricd& m) {
  Eigen::SelfAdjointEigenSolver<ShapeMatrix> solver(shape_operator(theta, m), Eigen::EigenvaluesOnly);
  Eigen::Matrix<double, kAlgebraDim, 1> expected = Eigen::Matrix<double, kAlgebraDim, 1>::Zero();
  expected.head<3>().setConstant(principal_curvature(theta, m));
  std::sort(expected.data(), expected.data() + kAlgebraDim);
  return (solver.eigenvalues() - expected).cwiseAbs().maxCoeff();
}

double laplacian_closed(double f_value, const Metricd& m) {
  return -(1 + 3 / (1 + 2 / m.r1 * (1 - f_value * f_value))) * f_value;
}

IsoparametricResiduals isoparametric_residuals(double theta, const Metricd& m) {
  require_chart(theta);
  const double f_value = std::cos(theta);

  // grad F is the pi_1-projection of grad f; its length is that of the horizontal part.
  const M14Point base = M14Point::on_chart(Sp2d::identity(), theta);
  const auto [vertical, horizontal] = decompose_pi1(base, gradient_f(base), m);
  const double grad_sq = metric_m14(horizontal, horizontal, m);

  // Chart form of the gradient, (0, -sin theta), and its theta-derivative.
  const TangentN11 grad{Elementd{}, -std::sin(theta)};
  const TangentN11 dgrad{Elementd{}, -std::cos(theta)};
  double laplacian = 0;
  for (const auto& e : n11_frame(theta, m))
    laplacian += metric_n11(covariant_derivative(e, grad, dgrad, theta, m), e, theta, m);

  return {std::abs(grad_sq - (1 - f_value * f_value)), std::abs(laplacian - laplacian_closed(f_value, m)),
          grad_sq, laplacian};
}

double focal_metric_s7(const Quatd& y, const Quatd& z, const Metricd& m) {
  if (std::abs(re(z)) > AlgebraElement<double>::kRealPartTolerance)
    throw InvalidElement("focal metric expects a pure imaginary z");
  return squared_norm(y) + m.r2 / 2 * squared_norm(im(z));
}

}  // namespace sp2
