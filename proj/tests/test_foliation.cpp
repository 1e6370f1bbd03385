#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sp2/errors.hpp"
#include "sp2/foliation.hpp"
#include "sp2/sampling.hpp"

using sp2::Elementd;
using sp2::Metricd;
using sp2::Quatd;
using sp2::TangentN11;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(sp2::Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TangentN11 random_tangent(sp2::Rng& rng) { return {sp2::random_element(rng), sp2::standard_normal(rng)}; }

double tangent_diff(const TangentN11& a, const TangentN11& b) {
  return std::max((a.xi.raw_coeffs() - b.xi.raw_coeffs()).cwiseAbs().maxCoeff(), std::abs(a.c - b.c));
}

}  // namespace

TEST(LambdaTheta, Examples) {
  const auto half = sp2::lambda_theta(kPi / 2, Metricd(0.8, 1.0));
  EXPECT_NEAR(half.lambda, 0.8 / 2.8, 1e-15);
  EXPECT_NEAR(half.lambda_prime, 0.0, 1e-15);
  EXPECT_NEAR(sp2::lambda_theta(kPi / 4, Metricd(1, 1)).lambda, 0.25, 1e-15);
  EXPECT_THROW(sp2::lambda_theta(0.0, Metricd(1, 1)), sp2::OutOfChart);
  EXPECT_THROW(sp2::lambda_theta(kPi, Metricd(1, 1)), sp2::OutOfChart);
}

TEST(LambdaThetaProperty, DerivativeMatchesFiniteDifferenceAndSymmetry) {
  sp2::Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    const Metricd m = sp2::random_metric(rng);
    const double theta = uniform(rng, 0.05, kPi - 0.05);
    const double h = 1e-5;
    const double fd = (sp2::lambda_theta(theta + h, m).lambda - sp2::lambda_theta(theta - h, m).lambda) / (2 * h);
    const auto lt = sp2::lambda_theta(theta, m);
    EXPECT_NEAR(lt.lambda_prime, fd, 1e-8);
    const auto mirror = sp2::lambda_theta(kPi - theta, m);
    EXPECT_NEAR(mirror.lambda, lt.lambda, 1e-14);
    EXPECT_NEAR(mirror.lambda_prime, -lt.lambda_prime, 1e-14);
  }
}

TEST(MetricN11, Examples) {
  sp2::Rng rng(22);
  const TangentN11 y{Elementd{Quatd{}, Quatd::one(), Quatd{}}, 0};
  for (int n = 0; n < 10; ++n) EXPECT_NEAR(sp2::metric_n11(y, y, uniform(rng, 0.1, 3), sp2::random_metric(rng)), 1.0, 1e-15);
  const TangentN11 x{Elementd{Quatd::i(), Quatd{}, Quatd{}}, 0};
  EXPECT_NEAR(sp2::metric_n11(x, x, kPi / 2, Metricd(1, 1)), 1.0 / 3, 1e-15);
  const TangentN11 c{Elementd{}, 1.7};
  EXPECT_NEAR(sp2::metric_n11(c, c, 1.0, Metricd(1, 1)), 1.7 * 1.7, 1e-15);
}

TEST(MetricN11Property, MatchesHorizontalLiftInM14) {
  // The chart metric is the length of the pi_1-horizontal part of the lifted vector.
  sp2::Rng rng(23);
  for (int n = 0; n < 100; ++n) {
    const Metricd m = sp2::random_metric(rng);
    const double theta = uniform(rng, 0.05, kPi - 0.05);
    const TangentN11 x = random_tangent(rng);
    const auto base = sp2::M14Point::on_chart(sp2::Sp2d::identity(), theta);
    const auto [vertical, horizontal] = sp2::decompose_pi1(base, sp2::lift_to_m14(x, theta), m);
    const double expected = sp2::metric_m14(horizontal, horizontal, m);
    EXPECT_NEAR(sp2::metric_n11(x, x, theta, m), expected, 1e-10 * (1 + expected));
  }
}

TEST(DecomposePi1, Examples) {
  const Metricd m(0.8, 1.3);
  const double theta = 0.9;
  const auto base = sp2::M14Point::on_chart(sp2::Sp2d::identity(), theta);
  const sp2::TangentM14 normal{Elementd{}, -std::sin(theta) * 2.0, Quatd::real(std::cos(theta) * 2.0)};
  const auto [v0, h0] = sp2::decompose_pi1(base, normal, m);
  EXPECT_LT(sp2::metric_m14(v0, v0, m), 1e-28);
  const auto vert = sp2::pi1_vertical(base, Quatd{0, 0.3, -1.1, 0.4});
  const auto [v1, h1] = sp2::decompose_pi1(base, vert, m);
  EXPECT_LT(sp2::metric_m14(h1, h1, m), 1e-26);
}

TEST(DecomposePi1Property, OrthogonalSplitting) {
  sp2::Rng rng(24);
  for (int n = 0; n < 100; ++n) {
    const Metricd m = sp2::random_metric(rng);
    const Quatd t = sp2::random_quaternion(rng);
    const double len = std::sqrt(1 + sp2::squared_norm(t));
    const sp2::M14Point base(sp2::random_sp2(rng), 1 / len, t / len);
    const sp2::TangentM14 v{sp2::random_element(rng), sp2::standard_normal(rng), sp2::random_quaternion(rng)};
    const auto [vert, hor] = sp2::decompose_pi1(base, v, m);
    const double total = sp2::metric_m14(v, v, m);
    EXPECT_NEAR(total, sp2::metric_m14(vert, vert, m) + sp2::metric_m14(hor, hor, m), 1e-10 * (1 + total));
    for (const Quatd& u : {Quatd::i(), Quatd::j(), Quatd::k()})
      EXPECT_NEAR(sp2::metric_m14(hor, sp2::pi1_vertical(base, u), m), 0.0, 1e-10 * (1 + total));
  }
}

TEST(ConnectionE, Examples) {
  sp2::Rng rng(25);
  const Metricd m = sp2::random_metric(rng);
  const TangentN11 a = random_tangent(rng);
  const TangentN11 b = random_tangent(rng);
  const TangentN11 e = sp2::connection_E(a, b, kPi / 2, m);
  EXPECT_NEAR(sp2::norm(e.xi.x()), 0.0, 1e-15);
  EXPECT_NEAR(e.c, 0.0, 1e-15);
  const TangentN11 y{Elementd{Quatd{}, Quatd::one(), Quatd{}}, 0};
  const TangentN11 ey = sp2::connection_E(y, y, 1.1, m);
  EXPECT_EQ(ey.xi.raw_coeffs().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(ey.c, 0.0);
}

TEST(CovariantDerivativeProperty, MetricCompatibleAndTorsionFree) {
  // For constant-coefficient chart fields only the d/dtheta component differentiates the metric:
  // X <Y, Z> = X.c * lambda' * <y.x, z.x>.  Brackets of such fields are the algebra brackets.
  sp2::Rng rng(26);
  const TangentN11 zero{};
  for (int n = 0; n < 200; ++n) {
    const Metricd m = sp2::random_metric(rng);
    const double theta = uniform(rng, 0.05, kPi - 0.05);
    const TangentN11 x = random_tangent(rng);
    const TangentN11 y = random_tangent(rng);
    const TangentN11 z = random_tangent(rng);
    const double lp = sp2::lambda_theta(theta, m).lambda_prime;
    const double lhs = x.c * lp * sp2::inner(y.xi.x(), z.xi.x());
    const double rhs = sp2::metric_n11(sp2::covariant_derivative(x, y, zero, theta, m), z, theta, m) +
                       sp2::metric_n11(y, sp2::covariant_derivative(x, z, zero, theta, m), theta, m);
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(lhs)));
    const TangentN11 dxy = sp2::covariant_derivative(x, y, zero, theta, m);
    const TangentN11 dyx = sp2::covariant_derivative(y, x, zero, theta, m);
    const TangentN11 torsion{dxy.xi - dyx.xi - sp2::bracket(x.xi, y.xi), dxy.c - dyx.c};
    EXPECT_LT(tangent_diff(torsion, zero), 1e-10);
  }
}

TEST(SecondFundamentalForm, Examples) {
  sp2::Rng rng(27);
  const Metricd m = sp2::random_metric(rng);
  const TangentN11 a{sp2::random_element(rng), 0};
  const TangentN11 b{sp2::random_element(rng), 0};
  EXPECT_NEAR(sp2::second_fundamental_form(a, b, kPi / 2, m), 0.0, 1e-15);
  const TangentN11 xi{Elementd{Quatd::i(), Quatd{}, Quatd{}}, 0};
  const TangentN11 xj{Elementd{Quatd::j(), Quatd::one(), Quatd{}}, 0};
  EXPECT_EQ(sp2::second_fundamental_form(xi, xj, 0.7, m), 0.0);
  EXPECT_THROW(sp2::second_fundamental_form(TangentN11{Elementd{}, 1.0}, a, 0.7, m), sp2::NotTangent);
}

TEST(SecondFundamentalFormProperty, NormalPartOfCovariantDerivativeAndInvolution) {
  sp2::Rng rng(28);
  const TangentN11 zero{};
  const TangentN11 normal{Elementd{}, -1.0};
  for (int n = 0; n < 100; ++n) {
    const Metricd m = sp2::random_metric(rng);
    const double theta = uniform(rng, 0.05, kPi - 0.05);
    const TangentN11 a{sp2::random_element(rng), 0};
    const TangentN11 b{sp2::random_element(rng), 0};
    const double sff = sp2::second_fundamental_form(a, b, theta, m);
    const double from_connection =
        sp2::metric_n11(sp2::covariant_derivative(a, b, zero, theta, m), normal, theta, m);
    EXPECT_NEAR(sff, from_connection, 1e-10 * (1 + std::abs(sff)));
    EXPECT_NEAR(sp2::second_fundamental_form(a, b, kPi - theta, m), -sff, 1e-10 * (1 + std::abs(sff)));
  }
}

TEST(ShapeSpectrum, Examples) {
  const auto s = sp2::shape_spectrum(kPi / 4, Metricd(1, 1));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[1].first, 0.5, 1e-12);
  EXPECT_EQ(s.eigenvalues[1].second, 3);
  EXPECT_EQ(s.eigenvalues[0].second, 7);
  EXPECT_NEAR(sp2::principal_curvature(kPi / 4, Metricd(1, 1)), 0.5, 1e-15);
  const auto flat = sp2::shape_spectrum(kPi / 2, Metricd(0.6, 0.9));
  ASSERT_EQ(flat.eigenvalues.size(), 1u);
  EXPECT_EQ(flat.eigenvalues[0].second, 10);
  EXPECT_LE(std::abs(flat.eigenvalues[0].first), 1e-12);
  EXPECT_LE(sp2::shape_operator(kPi / 2, Metricd(0.6, 0.9)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ShapeSpectrumProperty, MultiplicitiesThreeAndSeven) {
  sp2::Rng rng(29);
  for (int n = 0; n < 100; ++n) {
    const Metricd m = sp2::random_metric(rng);
    double theta = uniform(rng, 0.05, kPi - 0.05);
    if (std::abs(theta - kPi / 2) < 1e-3) theta += 0.01;
    const auto s = sp2::shape_spectrum(theta, m);
    ASSERT_EQ(s.eigenvalues.size(), 2u);
    const double mu = sp2::principal_curvature(theta, m);
    const auto& nonzero = mu > 0 ? s.eigenvalues[1] : s.eigenvalues[0];
    const auto& zero = mu > 0 ? s.eigenvalues[0] : s.eigenvalues[1];
    EXPECT_EQ(nonzero.second, 3);
    EXPECT_EQ(zero.second, 7);
    EXPECT_NEAR(nonzero.first, mu, 1e-9);
    EXPECT_NEAR(s.mean_curvature, 3 * mu, 1e-9);
    EXPECT_LE(sp2::spectrum_deviation(theta, m), 1e-9);
  }
}

TEST(Isoparametric, Examples) {
  const auto flat = sp2::isoparametric_residuals(kPi / 2, Metricd(0.4, 1.2));
  EXPECT_LE(flat.grad_residual, 1e-15);
  EXPECT_LE(flat.laplace_residual, 1e-15);
  EXPECT_NEAR(flat.laplacian, 0.0, 1e-15);
  EXPECT_NEAR(flat.gradient_norm_sq, 1.0, 1e-15);
  const auto third = sp2::isoparametric_residuals(kPi / 3, Metricd(1, 1));
  EXPECT_NEAR(third.laplacian, -1.1, 1e-12);
  EXPECT_NEAR(sp2::laplacian_closed(0.5, Metricd(1, 1)), -1.1, 1e-15);
}

TEST(IsoparametricProperty, ResidualsOnGrid) {
  sp2::Rng rng(30);
  for (int n = 0; n < 10; ++n) {
    const Metricd m = sp2::random_metric(rng);
    for (int k = 1; k <= 100; ++k) {
      const auto r = sp2::isoparametric_residuals(k * kPi / 101, m);
      EXPECT_LE(r.grad_residual, 1e-9);
      EXPECT_LE(r.laplace_residual, 1e-9);
    }
  }
}

TEST(FocalMetric, Examples) {
  EXPECT_EQ(sp2::focal_metric_s7(Quatd::one(), Quatd{}, Metricd(1, 1)), 1.0);
  EXPECT_EQ(sp2::focal_metric_s7(Quatd{}, Quatd::i(), Metricd(1, 1)), 0.5);
  EXPECT_THROW(sp2::focal_metric_s7(Quatd{}, Quatd::one(), Metricd(1, 1)), sp2::InvalidElement);
}

TEST(ChartPoint, Validation) {
  EXPECT_THROW(sp2::ChartPoint(sp2::Sp2d::identity(), 0.0), sp2::OutOfChart);
  EXPECT_THROW(sp2::ChartPoint(sp2::Sp2d::identity(), -1.0), sp2::OutOfChart);
  EXPECT_NO_THROW(sp2::ChartPoint(sp2::Sp2d::identity(), 1.0));
  EXPECT_THROW(sp2::M14Point(sp2::Sp2d::identity(), 1.0, Quatd::one()), sp2::GeometryError);
}
