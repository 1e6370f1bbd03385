#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace sp2 {

struct PlaneSearchOptions {
  int starts = 64;
  int iters = 400;
  std::uint64_t seed = 1;
  double fd_step = 1e-6;
};

struct PlaneSearchResult {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  double value = 0;
  int start_index = 0;
};

/// Objective evaluated on a Euclidean-orthonormal pair of coefficient vectors.
using PlaneObjective = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Gram-Schmidt on (a, b) in place; throws DegeneratePlane when b is (nearly) parallel to a.
void orthonormalize_pair(Eigen::VectorXd& a, Eigen::VectorXd& b);

/// Multi-start projected gradient descent over 2-planes of R^dim.
///
/// Each start draws Gaussian coefficient vectors from a seed derived from (seed, start index).
/// Gradients are central finite differences of the objective composed with Gram-Schmidt;
/// steps use Armijo backtracking and the iterate is re-orthonormalized after every step.
/// The minimum is reduced in start-index order, so the result depends only on the options.
PlaneSearchResult minimize_over_planes(Eigen::Index dim, const PlaneObjective& objective,
                                       const PlaneSearchOptions& options);

}  // namespace sp2
