#pragma once

#include <array>
#include <cstdint>

#include "sp2/algebra.hpp"
#include "sp2/foliation.hpp"

namespace sp2 {

// The S^3 action q . [(Q, t)] = [(diag(q, q) Q, (t1, t2 conj(q)))] restricted to Sp(2)_theta,
// and the induced geometry of the quotient hypersurfaces.

/// r1bar = 2 lambda(theta): Sp(2)_theta carries the left-invariant metric g_(r1bar, r2).
double rbar1(double theta, const Metricd& m);

/// The metric (r1bar, r2) induced on Sp(2)_theta.
Metricd induced_metric(double theta, const Metricd& m);

/// Closed curvature numerator of Sp(2)_theta, i.e. curvature_R_closed at (r1bar, r2).
double curvature_sigma_lift(const Elementd& a, const Elementd& b, double theta, const Metricd& m);

/// Left-translated action field Q^* diag(u, u) Q - diag(u, 0) of the S^3 action at Q.
Elementd sigma7_action_field(const Sp2d& q, const Quatd& u);

struct Sigma7Frame {
  ChartPoint base;
  Metricd metric;                          ///< induced (r1bar, r2)
  std::array<Elementd, 3> vertical_basis;  ///< action fields for u = i, j, k
  std::array<Elementd, 3> vertical_orthonormal;
  std::array<Elementd, 7> horizontal_basis;  ///< orthonormal under the induced metric
};

/// Throws DegenerateFrame if a Gram-Schmidt pivot drops below 1e-10.
Sigma7Frame sigma7_frame(const ChartPoint& base, const Metricd& m);

/// Vertical component of an algebra element with respect to a frame.
Elementd vertical_part(const Elementd& xi, const Sigma7Frame& frame);

/// Largest |<xi, v>| over the vertical basis, normalized by |xi| |v|.
double horizontality_defect(const Elementd& xi, const Sigma7Frame& frame);

struct OneillCurvature {
  double base_K;         ///< sectional curvature of Sp(2)_theta on the lifted plane
  double vertical_term;  ///< (3/4)|[X1, X2]^V|^2 / Gram
  double K;              ///< base_K + vertical_term
};

/// Gray-O'Neill sectional curvature of the quotient; throws NotTangent if an input is not horizontal.
OneillCurvature oneill_sectional(const Elementd& a, const Elementd& b, const Sigma7Frame& frame);

struct QuasiPositivityResult {
  double min_K = 0;
  Elementd xi1;
  Elementd xi2;
};

/// Minimum of the lifted curvature over horizontal 2-planes at the identity coset.
QuasiPositivityResult quasi_positive_check(double theta, const Metricd& m, int starts, int iters,
                                           std::uint64_t seed);

struct RicciBoundResult {
  double bound = 0;                 ///< min over points and frame directions of the lifted partial Ricci sum
  double all_directions_bound = 0;  ///< min over points of the smallest eigenvalue of the same form
  int sample_points = 0;
};

/// Sampled lower bound for the Ricci curvature of Sigma^7_theta (Ric >= sum of lifted curvatures).
RicciBoundResult ricci_lower_bound(double theta, const Metricd& m, int sample_points, std::uint64_t seed);

/// Form X -> sum_i <R(X, X_i) X, X_i> of Sp(2)_theta in horizontal_basis coordinates.
Eigen::Matrix<double, 7, 7> horizontal_ricci_form(const Sigma7Frame& frame);

struct CurvatureCertificate {
  double theta = 0;
  Metricd metric{1, 1};
  double min_horizontal_K_at_identity = 0;
  double min_ricci_lower_bound = 0;
  double min_ricci_all_directions = 0;
  int samples = 0;
  int starts = 0;
  std::uint64_t seed = 0;

  bool valid() const { return min_horizontal_K_at_identity > 0 && min_ricci_lower_bound > 0; }
};

CurvatureCertificate certify_sigma7(double theta, const Metricd& m, int starts, int iters, int samples,
                                    std::uint64_t seed);

/// Trace of the second fundamental form over the horizontal frame at base.
double mean_curvature_sigma7(const ChartPoint& base, const Metricd& m);

/// 3 mu at Q = Id.
double mean_curvature_sigma7_identity_closed(double theta, const Metricd& m);
/// 3 mu - 16 lambda mu / (8 lambda + r2) at Q = diag(i, 1).
double mean_curvature_sigma7_diag_i_closed(double theta, const Metricd& m);

struct TransnormalCheck {
  double residual = 0;           ///< | |grad F|^2 - (1 - F^2) |
  double max_vertical_product = 0;  ///< max |<grad f, V_u>| over u = i, j, k
};

/// Infinitesimal generator of the S^3 action on Sp(2) x S^4: (diag(u, u) Q, (0, -t2 u)).
TangentM14 pi2_vertical(const M14Point& b, const Quatd& u);

TransnormalCheck transnormal_check(const M14Point& b, const Metricd& m);
TransnormalCheck transnormal_residual(double theta, const Metricd& m);

}  // namespace sp2
