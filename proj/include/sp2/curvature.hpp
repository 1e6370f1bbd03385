#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "sp2/algebra.hpp"

namespace sp2 {

// ---------------------------------------------------------------------------
// Closed forms (templated on the scalar type).
// ---------------------------------------------------------------------------

/// Symmetric part D(a, b) of the Levi-Civita connection of g_r; only its y-block is nonzero.
template <typename Scalar>
AlgebraElement<Scalar> connection_D(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b,
                                    const MetricParams<Scalar>& m) {
  const Quaternion<Scalar> y = (a.x() * b.y() + b.x() * a.y()) * ((1 - m.r1) / 2) +
                               (a.y() * b.z() + b.y() * a.z()) * ((m.r2 - 1) / 2);
  return {Quaternion<Scalar>{}, y, Quaternion<Scalar>{}};
}

/// The four nonnegative-or-cubic summands of the closed curvature numerator.
template <typename Scalar>
struct CurvatureTerms {
  Scalar gamma;   ///< (1/4)|r1 g1 + r2 g2|^2
  Scalar first;   ///< (r1/8)|b1 + (3 - 2 r1) a1|^2
  Scalar second;  ///< (r2/8)|b2 + (3 - 2 r2) a2|^2
  Scalar cubic;   ///< (1/2)((1 - r1)^3 + (1 - r2)^3)|a1|^2

  Scalar sum() const { return gamma + first + second + cubic; }
};

template <typename Scalar>
CurvatureTerms<Scalar> curvature_terms(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b,
                                       const MetricParams<Scalar>& m) {
  const auto v = abg(a, b);
  const Scalar r1 = m.r1;
  const Scalar r2 = m.r2;
  const Scalar s1 = 1 - r1;
  const Scalar s2 = 1 - r2;
  CurvatureTerms<Scalar> t;
  t.gamma = squared_norm(v.gamma1 * r1 + v.gamma2 * r2) / 4;
  t.first = r1 / 8 * squared_norm(v.beta1 + v.alpha1 * (3 - 2 * r1));
  t.second = r2 / 8 * squared_norm(v.beta2 + v.alpha2 * (3 - 2 * r2));
  t.cubic = (s1 * s1 * s1 + s2 * s2 * s2) / 2 * squared_norm(v.alpha1);
  return t;
}

/// <R(a, b) a, b> from the closed form; equals the sectional curvature for g_r-orthonormal pairs.
template <typename Scalar>
Scalar curvature_R_closed(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b,
                          const MetricParams<Scalar>& m) {
  return curvature_terms(a, b, m).sum();
}

/// Gram determinant g11 g22 - g12^2 of a pair under g_r.
template <typename Scalar>
Scalar gram_determinant(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b,
                        const MetricParams<Scalar>& m) {
  const Scalar g11 = inner_gr(a, a, m);
  const Scalar g22 = inner_gr(b, b, m);
  const Scalar g12 = inner_gr(a, b, m);
  return g11 * g22 - g12 * g12;
}

// ---------------------------------------------------------------------------
// Numerical routines (double precision).
// ---------------------------------------------------------------------------

/// Levi-Civita connection of left-invariant fields from the Koszul formula over the standard frame.
Elementd koszul_connection(const Elementd& a, const Elementd& b, const Metricd& m);

/// <R(a, b) a, b> assembled only from koszul_connection, bracket and inner_gr.
double curvature_R_oracle(const Elementd& a, const Elementd& b, const Metricd& m);

inline constexpr double kGramTolerance = 1e-12;

/// Sectional curvature of span{a, b}; throws DegeneratePlane when the Gram determinant is <= 1e-12.
double sectional_curvature(const Elementd& a, const Elementd& b, const Metricd& m);

/// Ricci curvature Ric(xi, xi) for a g_r-unit vector; throws NotUnit otherwise.
double ricci(const Elementd& xi, const Metricd& m);

using RicciMatrix = Eigen::Matrix<double, kAlgebraDim, kAlgebraDim>;

/// Full Ricci tensor in the standard frame by polarization of curvature_R_oracle.
RicciMatrix ricci_matrix(const Metricd& m);

/// Ricci diagonal predicted by the closed table: 2r1 + 4/r1, 12 - 3(r1 + r2), 2r2 + 4/r2.
Eigen::Matrix<double, kAlgebraDim, 1> ricci_diagonal_closed(const Metricd& m);

struct EinsteinReport {
  Metricd metric;
  RicciMatrix ricci_matrix;
  bool is_einstein = false;
  std::optional<double> constant_c;
  /// max(largest |off-diagonal|, diagonal spread).
  double deviation = 0;
};

EinsteinReport is_einstein(const Metricd& m, double tol);

/// Max over i < j of |sum_{k != i,j} K((e_i + e_j)/sqrt2, e_k) - (c - K(e_i, e_j))|.
double einstein_mixed_plane_residual(const Metricd& m, double c);

struct PlaneWitness {
  Elementd xi1;
  Elementd xi2;
  double unnormalized_R = 0;
  double sectional_K = 0;
};

/// Multi-start minimization of the sectional curvature over 2-planes of sp(2).
PlaneWitness min_sectional_curvature(const Metricd& m, int starts, int iters, std::uint64_t seed);

/// Explicit negatively curved plane for r1 + r2 > 2 together with the checks it must satisfy.
struct NegativeWitness {
  PlaneWitness plane;
  double t = 0;
  double u = 0;
  double v = 0;
  double alpha1_norm = 0;
  double gamma_residual = 0;   ///< |r1 g1 + r2 g2|
  double first_residual = 0;   ///< |b1 + (3 - 2 r1) a1|
  double second_residual = 0;  ///< |b2 + (3 - 2 r2) a2|
  double predicted_R = 0;      ///< (1/2)((1 - r1)^3 + (1 - r2)^3)|a1|^2
  double oracle_R = 0;

  double max_vanishing_residual() const;
};

/// max(10, 4(|2r1 - 3| + |2r2 - 3|) / min(r1, r2)).
double default_witness_t(const Metricd& m);

/// Throws NotApplicable if r1 + r2 <= 2 and DiscriminantNegative if t is too small.
NegativeWitness negative_plane_witness(const Metricd& m, double t);
NegativeWitness negative_plane_witness(const Metricd& m);

}  // namespace sp2
