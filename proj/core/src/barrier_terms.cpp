#include "cuav/barrier_terms.hpp"

#include <cmath>

namespace cuav::terms {

namespace {
const double kLog2e = 1.0 / std::log(2.0);
}

bool rate_surrogate(double zeta1, double zeta2, double rho, double ref, Eval2& out) {
  const double u = zeta2 + rho * zeta1;
  if (!(u > 0.0) || !(ref > 0.0)) return false;
  out.value = std::log2(u) - std::log2(ref) - (zeta2 / ref - 1.0) * kLog2e;
  out.grad << kLog2e * rho / u, kLog2e * (1.0 / u - 1.0 / ref);
  const double c = -kLog2e / (u * u);
  out.hess << c * rho * rho, c * rho, c * rho, c;
  return true;
}

double rate_exact(double zeta1, double zeta2, double rho) { return std::log2(1.0 + rho * zeta1 / zeta2); }

bool power_composite_barrier(const Eigen::Vector3d& x, double zeta2, double alpha, Eval4& out) {
  const double r2 = x.squaredNorm();
  double phi, d1, d2;  // phi = r2^(a/2), d1 = a r2^(a/2-1), d2 = a(a-2) r2^(a/2-2)
  if (alpha == 2.0) {
    phi = r2;
    d1 = 2.0;
    d2 = 0.0;
  } else {
    phi = std::pow(r2, 0.5 * alpha);
    d1 = alpha * std::pow(r2, 0.5 * alpha - 1.0);
    d2 = r2 > 0.0 ? alpha * (alpha - 2.0) * std::pow(r2, 0.5 * alpha - 2.0) : 0.0;
  }
  const double s = zeta2 - phi;
  if (!(s > 0.0)) return false;
  Eigen::Vector4d ds;  // gradient of the slack
  ds << -d1 * x, 1.0;
  out.value = -std::log(s);
  out.grad = -ds / s;
  out.hess = ds * ds.transpose() / (s * s);
  out.hess.topLeftCorner<3, 3>() +=
      (d1 * Eigen::Matrix3d::Identity() + d2 * x * x.transpose()) / s;
  return true;
}

bool ball_barrier(const Eigen::Vector2d& d, double r2, Eval2& out) {
  const double s = r2 - d.squaredNorm();
  if (!(s > 0.0)) return false;
  out.value = -std::log(s);
  out.grad = 2.0 * d / s;
  out.hess = 4.0 * d * d.transpose() / (s * s) + 2.0 / s * Eigen::Matrix2d::Identity();
  return true;
}

}  // namespace cuav::terms
