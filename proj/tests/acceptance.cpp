// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sp2/curvature.hpp"
#include "sp2/foliation.hpp"
#include "sp2/lab.hpp"
#include "sp2/sampling.hpp"
#include "sp2/transnormal.hpp"

using sp2::Elementd;
using sp2::Metricd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Uniform metric on (0, 2]^2; the lower edge keeps the frame scale sqrt(2/r) finite.
Metricd any_metric(sp2::Rng& rng) { return sp2::random_metric(rng, 1e-3, 2.0); }

Metricd nonneg_metric(sp2::Rng& rng) {
  for (;;) {
    const Metricd m = any_metric(rng);
    if (m.r1 + m.r2 <= 2) return m;
  }
}

Metricd excess_metric(sp2::Rng& rng) {
  for (;;) {
    const Metricd m = any_metric(rng);
    if (m.r1 + m.r2 > 2) return m;
  }
}

double table_K(int p, int q, const Metricd& m) {
  const auto block = [](int i) { return i < 3 ? 0 : (i < 7 ? 1 : 2); };
  const int a = std::min(block(p), block(q));
  const int b = std::max(block(p), block(q));
  if (a == 0 && b == 0) return 2 / m.r1;
  if (a == 0 && b == 1) return m.r1 / 2;
  if (a == 0 && b == 2) return 0;
  if (a == 1 && b == 1) return 4 - 1.5 * (m.r1 + m.r2);
  if (a == 1 && b == 2) return m.r2 / 2;
  return 2 / m.r2;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  sp2::Rng rng(1);
  double worst = 0;
  for (int mi = 0; mi < 100; ++mi) {
    const Metricd m = any_metric(rng);
    for (int s = 0; s < 100; ++s) {
      const Elementd a = sp2::random_element(rng);
      const Elementd b = sp2::random_element(rng);
      const double closed = sp2::curvature_R_closed(a, b, m);
      worst = std::max(worst, std::abs(closed - sp2::curvature_R_oracle(a, b, m)) / (1 + std::abs(closed)));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t < 10, fmt("max scaled residual %.3e (<= 1e-9) over 10^4 pairs x 100 metrics, %.2fs (< 10s)", worst, t)};
}

Outcome criterion2() {
  sp2::Rng rng(2);
  double worst = 0;
  int pairs = 0;
  for (int mi = 0; mi < 20; ++mi) {
    const Metricd m = any_metric(rng);
    const auto e = sp2::standard_basis(m);
    pairs = 0;
    for (int p = 0; p < 10; ++p)
      for (int q = p + 1; q < 10; ++q, ++pairs)
        worst = std::max(worst, std::abs(sp2::sectional_curvature(e[p], e[q], m) - table_K(p, q, m)));
  }
  return {worst <= 1e-9 && pairs == 45, fmt("%.0f frame pairs x 20 metrics, max deviation %.3e (<= 1e-9)", pairs, worst)};
}

Outcome criterion3() {
  sp2::Rng rng(3);
  double worst = 0;
  for (int mi = 0; mi < 20; ++mi) {
    const Metricd m = any_metric(rng);
    worst = std::max(worst, (sp2::ricci_matrix(m).diagonal() - sp2::ricci_diagonal_closed(m)).cwiseAbs().maxCoeff());
  }
  sp2::lab::RunConfig cfg;
  cfg.command = sp2::lab::Command::ScanEinstein;
  cfg.r1_range = sp2::lab::parse_range("0.25:1.75:0.05");
  cfg.r2_range = sp2::lab::parse_range("0.25:1.75:0.05");
  cfg.tol = 1e-6;
  const auto cells = sp2::lab::run(cfg).document["results"]["einstein_cells"];
  bool set_ok = cells.size() == 2;
  if (set_ok) {
    set_ok = cells[0]["r1"] == 0.5 && cells[0]["r2"] == 0.5 && std::abs(cells[0]["c"].get<double>() - 9) <= 1e-9 &&
             cells[1]["r1"] == 1.0 && cells[1]["r2"] == 1.0 && std::abs(cells[1]["c"].get<double>() - 6) <= 1e-9;
  }
  return {worst <= 1e-9 && set_ok,
          fmt("Ricci diagonal max deviation %.3e (<= 1e-9); scan returned %.0f cells, expected {(0.5,0.5) c=9, (1,1) c=6}: ",
              worst, static_cast<double>(cells.size())) +
              (set_ok ? "match" : "MISMATCH")};
}

Outcome criterion4() {
  sp2::Rng rng(4);
  double min_k = INFINITY;
  for (int n = 0; n < 50; ++n)
    min_k = std::min(min_k, sp2::min_sectional_curvature(nonneg_metric(rng), 64, 400, sp2::derive_seed(4, n)).sectional_K);
  double worst_pred = 0, worst_oracle = 0, worst_vanish = 0, max_r = -INFINITY;
  for (int n = 0; n < 50; ++n) {
    const Metricd m = excess_metric(rng);
    const auto w = sp2::negative_plane_witness(m);
    const double predicted = 0.5 * (std::pow(1 - m.r1, 3) + std::pow(1 - m.r2, 3)) * w.alpha1_norm * w.alpha1_norm;
    worst_pred = std::max(worst_pred, std::abs(w.plane.unnormalized_R - predicted));
    worst_oracle = std::max(worst_oracle, std::abs(w.plane.unnormalized_R - w.oracle_R));
    worst_vanish = std::max(worst_vanish, w.max_vanishing_residual());
    max_r = std::max(max_r, w.plane.unnormalized_R);
  }
  const bool pass = min_k >= -1e-9 && max_r < 0 && worst_pred <= 1e-9 && worst_oracle <= 1e-9 && worst_vanish <= 1e-9;
  return {pass, fmt("min K over 50 nonneg metrics %.3e (>= -1e-9); witness: max R %.3e (< 0), ", min_k, max_r) +
                    fmt("|R - cubic| %.3e, |R - oracle| %.3e, vanishing %.3e (all <= 1e-9)", worst_pred, worst_oracle,
                        worst_vanish)};
}

Outcome criterion5() {
  sp2::Rng rng(5);
  double worst_eig = 0, worst_res = 0, worst_mult = 0;
  for (int mi = 0; mi < 5; ++mi) {
    const Metricd m = any_metric(rng);
    for (double theta : sp2::lab::theta_grid(100)) {
      worst_eig = std::max(worst_eig, sp2::spectrum_deviation(theta, m));
      const auto r = sp2::isoparametric_residuals(theta, m);
      worst_res = std::max({worst_res, r.grad_residual, r.laplace_residual});
      if (std::abs(theta - kPi / 2) > 1e-12) {
        const auto s = sp2::shape_spectrum(theta, m);
        const bool ok = s.eigenvalues.size() == 2 &&
                        (s.eigenvalues[0].second * s.eigenvalues[1].second == 21);
        if (!ok) worst_mult = 1;
      }
    }
  }
  const double sff = sp2::shape_operator(kPi / 2, Metricd(0.7, 1.3)).cwiseAbs().maxCoeff();
  return {worst_eig <= 1e-9 && worst_res <= 1e-9 && sff <= 1e-12 && worst_mult == 0,
          fmt("eigenvalue deviation %.3e (<= 1e-9), residuals %.3e (<= 1e-9), |B| at pi/2 %.3e (<= 1e-12)", worst_eig,
              worst_res, sff)};
}

Outcome criterion6() {
  sp2::Rng rng(6);
  const sp2::Sp2d diag_i = sp2::Sp2d::diag(sp2::Quatd::i(), sp2::Quatd::one());
  double worst = 0;
  for (int n = 0; n < 20; ++n) {
    const Metricd m = any_metric(rng);
    const double theta = std::uniform_real_distribution<double>(0.01, kPi - 0.01)(rng);
    const auto [lambda, lambda_prime] = sp2::lambda_theta(theta, m);
    const double mu = sp2::principal_curvature(theta, m);
    worst = std::max(worst, std::abs(sp2::mean_curvature_sigma7(sp2::ChartPoint(sp2::Sp2d::identity(), theta), m) - 3 * mu));
    worst = std::max(worst, std::abs(sp2::mean_curvature_sigma7(sp2::ChartPoint(diag_i, theta), m) -
                                     (3 * mu - 16 * lambda * mu / (8 * lambda + m.r2))));
  }
  const Metricd unit(1, 1);
  const double gap = sp2::mean_curvature_sigma7(sp2::ChartPoint(sp2::Sp2d::identity(), kPi / 3), unit) -
                     sp2::mean_curvature_sigma7(sp2::ChartPoint(diag_i, kPi / 3), unit);
  return {worst <= 1e-9 && std::abs(gap) > 1e-3,
          fmt("max deviation %.3e (<= 1e-9) over 20 (theta, m); H(Id) - H(diag(i,1)) at pi/3 = %.6f (> 1e-3)", worst, gap)};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  double min_k = INFINITY, min_ric = INFINITY;
  for (const Metricd& m : {Metricd(1, 1), Metricd(0.5, 0.5), Metricd(0.9, 1.0)}) {
    for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
      min_k = std::min(min_k, sp2::quasi_positive_check(theta, m, 64, 400, 1).min_K);
      min_ric = std::min(min_ric, sp2::ricci_lower_bound(theta, m, 200, 1).bound);
    }
  }
  const double t = seconds_since(t0);
  return {min_k > 0 && min_ric > 0 && t < 60,
          fmt("min quasi-positive K %.6f (> 0), min Ricci bound %.6f (> 0), %.2fs (< 60s)", min_k, min_ric, t)};
}

Outcome criterion8() {
  using sp2::lab::Command;
  std::vector<sp2::lab::RunConfig> configs(5);
  configs[0].command = Command::VerifyFormula;
  configs[0].samples = 2000;
  configs[1].command = Command::ScanEinstein;
  configs[1].r1_range = sp2::lab::parse_range("0.4:1.1:0.1");
  configs[1].r2_range = sp2::lab::parse_range("0.4:1.1:0.1");
  configs[2].command = Command::MinCurvature;
  configs[2].r1 = 1.5;
  configs[2].r2 = 1.4;
  configs[3].command = Command::Foliation;
  configs[3].r1 = 0.8;
  configs[3].r2 = 1.2;
  configs[4].command = Command::Sigma7;
  configs[4].r1 = 0.9;
  configs[4].r2 = 1.0;
  int identical = 0;
  for (auto& cfg : configs) {
    cfg.seed = 12345;
    const std::string a = sp2::lab::render(sp2::lab::run(cfg), sp2::lab::Format::Json);
    const std::string b = sp2::lab::render(sp2::lab::run(cfg), sp2::lab::Format::Json);
    identical += a == b;
  }
  return {identical == 5, fmt("%.0f of 5 commands byte-identical on repeat", identical)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
