#pragma once

#include <Eigen/Core>

// Scalar pieces of the trajectory subproblem, with analytic first and second
// derivatives. Each barrier returns false (leaving outputs untouched) outside
// its domain.

namespace cuav::terms {

struct Eval2 {
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

struct Eval4 {
  double value = 0.0;
  Eigen::Vector4d grad = Eigen::Vector4d::Zero();
  Eigen::Matrix4d hess = Eigen::Matrix4d::Zero();
};

/// Concave rate surrogate in (zeta1, zeta2), bits:
///   log2(zeta2 + rho zeta1) - log2(ref) - (zeta2 / ref - 1) log2(e).
bool rate_surrogate(double zeta1, double zeta2, double rho, double ref, Eval2& out);

/// Exact rate log2(1 + rho zeta1 / zeta2) the surrogate lower-bounds.
double rate_exact(double zeta1, double zeta2, double rho);

/// -log(zeta2 - (|x|^2)^(alpha/2)) in the variables (x0, x1, x2, zeta2).
bool power_composite_barrier(const Eigen::Vector3d& x, double zeta2, double alpha, Eval4& out);

/// -log(r2 - |d|^2).
bool ball_barrier(const Eigen::Vector2d& d, double r2, Eval2& out);

}  // namespace cuav::terms
