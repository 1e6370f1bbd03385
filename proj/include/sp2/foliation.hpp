#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sp2/algebra.hpp"

namespace sp2 {

// Geometry of (Sp(2) x S^4)/S^3 in the chart (Q, theta) -> [(Q, (cos theta, sin theta))].
// Tangent vectors are written (xi, c): xi in sp(2) left-translated by Q, c along d/dtheta.

/// Point of the principal-orbit chart; theta is strictly inside (0, pi).
struct ChartPoint {
  Sp2d q;
  double theta;

  ChartPoint(Sp2d q_, double theta_);
};

struct TangentN11 {
  Elementd xi;
  double c = 0;
};

/// Point (Q, (t1, t2)) of Sp(2) x S^4.
struct M14Point {
  Sp2d q;
  double t1 = 1;
  Quatd t2{};

  M14Point(Sp2d q_, double t1_, Quatd t2_);
  static M14Point on_chart(const Sp2d& q, double theta);
};

/// Tangent vector (Q xi, (s1, s2)) to Sp(2) x S^4.
struct TangentM14 {
  Elementd xi;
  double s1 = 0;
  Quatd s2{};
};

struct SpectrumReport {
  std::vector<std::pair<double, int>> eigenvalues;  ///< (value, multiplicity), ascending
  double mean_curvature = 0;
};

/// Throws OutOfChart unless 0 < theta < pi.
void require_chart(double theta);

struct LambdaTheta {
  double lambda;
  double lambda_prime;
};

/// lambda = sin^2 / (1 + (2/r1) sin^2) and its analytic theta-derivative.
LambdaTheta lambda_theta(double theta, const Metricd& m);

/// Induced metric lambda <x1,x2> + <y1,y2> + (r2/2) <z1,z2> + c1 c2.
double metric_n11(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m);

/// Product metric g_r + round metric on S^4.
double metric_m14(const TangentM14& a, const TangentM14& b, const Metricd& m);

/// Infinitesimal S^3 action along the pi_1 fibres: (-Q diag(u, 0), (0, u t2)).
TangentM14 pi1_vertical(const M14Point& b, const Quatd& u);

/// Orthogonal splitting of v into pi_1-vertical and pi_1-horizontal parts.
std::pair<TangentM14, TangentM14> decompose_pi1(const M14Point& b, const TangentM14& v, const Metricd& m);

/// Lift (xi, (-c sin, c cos)) of the chart vector (xi, c) at (Q, (cos theta, sin theta)).
TangentM14 lift_to_m14(const TangentN11& x, double theta);

/// Gradient (0, (|t2|^2, -t1 t2)) of f(Q, t) = t1.
TangentM14 gradient_f(const M14Point& b);

/// Symmetric part of the Levi-Civita connection on constant-coefficient chart fields.
TangentN11 connection_E(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m);

/// Covariant derivative of a chart field Y along X; dy_dtheta is Y's coefficient derivative.
TangentN11 covariant_derivative(const TangentN11& x, const TangentN11& y, const TangentN11& dy_dtheta,
                                double theta, const Metricd& m);

/// Second fundamental form (lambda'/2) <x1, x2> of Sp(2)_theta for the normal (0, -1).
double second_fundamental_form(const TangentN11& a, const TangentN11& b, double theta, const Metricd& m);

/// Orthonormal frame of the chart: 10 left-invariant directions followed by (0, 1).
std::array<TangentN11, 11> n11_frame(double theta, const Metricd& m);

using ShapeMatrix = Eigen::Matrix<double, kAlgebraDim, kAlgebraDim>;

/// Shape operator of Sp(2)_theta in the first ten vectors of n11_frame.
ShapeMatrix shape_operator(double theta, const Metricd& m);

/// Eigenvalues within this distance are merged into one multiplicity.
inline constexpr double kEigenClusterTolerance = 1e-9;

SpectrumReport shape_spectrum(double theta, const Metricd& m);

/// Closed-form principal curvature cot(theta) / (1 + (2/r1) sin^2 theta).
double principal_curvature(double theta, const Metricd& m);

/// Max distance between the sorted numerical shape-operator eigenvalues and {mu x3, 0 x7}.
double spectrum_deviation(double theta, const Metricd& m);

struct IsoparametricResiduals {
  double grad_residual;
  double laplace_residual;
  double gradient_norm_sq;  ///< |grad F|^2 computed via the pi_1 horizontal lift
  double laplacian;         ///< trace of the Hessian over n11_frame
};

IsoparametricResiduals isoparametric_residuals(double theta, const Metricd& m);

/// Closed form -(1 + 3 / (1 + (2/r1)(1 - F^2))) F.
double laplacian_closed(double f_value, const Metricd& m);

/// |y|^2 + (r2/2)|z|^2, the metric on the focal S^7 transverse to the pi_1' fibres.
double focal_metric_s7(const Quatd& y, const Quatd& z, const Metricd& m);

}  // namespace sp2
