#include "sp2/plane_search.hpp"

#include <cmath>
#include <limits>

#include "sp2/errors.hpp"
#include "sp2/sampling.hpp"

namespace sp2 {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-18;
constexpr double kGradientFloor = 1e-13;

struct Iterate {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  double value;
};

double evaluate(const PlaneObjective& f, Eigen::VectorXd a, Eigen::VectorXd b) {
  orthonormalize_pair(a, b);
  return f(a, b);
}

// Central differences of f o Gram-Schmidt with respect to the stacked (a, b).
Eigen::VectorXd gradient(const PlaneObjective& f, const Iterate& it, double h) {
  const Eigen::Index n = it.a.size();
  Eigen::VectorXd g(2 * n);
  Eigen::VectorXd a = it.a;
  Eigen::VectorXd b = it.b;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    double& coord = i < n ? a(i) : b(i - n);
    const double saved = coord;
    coord = saved + h;
    const double fp = evaluate(f, a, b);
    coord = saved - h;
    const double fm = evaluate(f, a, b);
    coord = saved;
    g(i) = (fp - fm) / (2 * h);
  }
  return g;
}

Iterate descend(const PlaneObjective& f, Iterate it, const PlaneSearchOptions& options) {
  const Eigen::Index n = it.a.size();
  double step = 1.0;
  for (int k = 0; k < options.iters; ++k) {
    const Eigen::VectorXd g = gradient(f, it, options.fd_step);
    const double g2 = g.squaredNorm();
    if (std::sqrt(g2) < kGradientFloor) break;

    bool accepted = false;
    while (step > kMinStep) {
      Eigen::VectorXd a = it.a - step * g.head(n);
      Eigen::VectorXd b = it.b - step * g.tail(n);
      try {
        orthonormalize_pair(a, b);
      } catch (const DegeneratePlane&) {
        step /= 2;
        continue;
      }
      const double value = f(a, b);
      if (value <= it.value - kArmijo * step * g2) {
        it = {std::move(a), std::move(b), value};
        accepted = true;
        break;
      }
      step /= 2;
    }
    if (!accepted) break;
    step *= 2;
  }
  return it;
}

}  // namespace

void orthonormalize_pair(Eigen::VectorXd& a, Eigen::VectorXd& b) {
  const double na = a.norm();
  if (!(na > 0)) throw DegeneratePlane("first spanning vector vanishes");
  a /= na;
  b -= a.dot(b) * a;
  const double nb = b.norm();
  if (!(nb > 1e-10 * (1 + na))) throw DegeneratePlane("spanning vectors are parallel");
  b /= nb;
}

PlaneSearchResult minimize_over_planes(Eigen::Index dim, const PlaneObjective& objective,
                                       const PlaneSearchOptions& options) {
  if (options.starts < 1) throw GeometryError("plane search needs at least one start");
  if (dim < 2) throw GeometryError("plane search needs dimension >= 2");

  PlaneSearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.starts; ++s) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(s)));
    Iterate it{Eigen::VectorXd(dim), Eigen::VectorXd(dim), 0.0};
    for (Eigen::Index i = 0; i < dim; ++i) it.a(i) = standard_normal(rng);
    for (Eigen::Index i = 0; i < dim; ++i) it.b(i) = standard_normal(rng);
    orthonormalize_pair(it.a, it.b);
    it.value = objective(it.a, it.b);

    it = descend(objective, std::move(it), options);
    if (it.value < best.value) {
      best.a = it.a;
      best.b = it.b;
      best.value = it.value;
      best.start_index = s;
    }
  }
  return best;
}

}  // namespace sp2
