#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "cuav/barrier_terms.hpp"

namespace cuav {
namespace {

using terms::Eval2;
using terms::Eval4;

// Central differences of value and gradient against the analytic ones.
template <int D, class Eval, class F>
void check_fd(F f, const Eigen::Matrix<double, D, 1>& x0, double tol) {
  Eval e;
  ASSERT_TRUE(f(x0, e));
  for (int i = 0; i < D; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x0(i)));
    Eigen::Matrix<double, D, 1> xp = x0, xm = x0;
    xp(i) += h;
    xm(i) -= h;
    Eval ep, em;
    ASSERT_TRUE(f(xp, ep) && f(xm, em));
    const double g_fd = (ep.value - em.value) / (2 * h);
    const double gscale = std::max(std::abs(e.grad(i)), 1e-3 * e.grad.norm());
    EXPECT_NEAR(g_fd, e.grad(i), tol * std::max(gscale, 1e-12)) << "grad " << i;
    for (int j = 0; j < D; ++j) {
      const double h_fd = (ep.grad(j) - em.grad(j)) / (2 * h);
      const double hscale = std::max(std::abs(e.hess(i, j)), 1e-3 * e.hess.norm());
      EXPECT_NEAR(h_fd, e.hess(i, j), tol * std::max(hscale, 1e-12)) << "hess " << i << "," << j;
    }
  }
}

TEST(BarrierTerms, RateSurrogateDerivatives) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.05, 0.95), v(1.0, 3.0), r(5.0, 200.0);
  for (int k = 0; k < 50; ++k) {
    const double rho = r(rng), ref = v(rng);
    auto f = [&](const Eigen::Vector2d& x, Eval2& e) {
      return terms::rate_surrogate(x(0), x(1), rho, ref, e);
    };
    check_fd<2, Eval2>(f, Eigen::Vector2d(u(rng), v(rng)), 1e-5);
  }
}

TEST(BarrierTerms, SurrogateIsTightLowerBound) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0), v(1.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double z1 = u(rng), z2 = v(rng), ref = v(rng), rho = 50.0;
    Eval2 e;
    ASSERT_TRUE(terms::rate_surrogate(z1, z2, rho, ref, e));
    EXPECT_LE(e.value, terms::rate_exact(z1, z2, rho) + 1e-12);
    ASSERT_TRUE(terms::rate_surrogate(z1, ref, rho, ref, e));
    EXPECT_NEAR(e.value, terms::rate_exact(z1, ref, rho), 1e-12);
  }
}

TEST(BarrierTerms, RateSurrogateConcave) {
  Eval2 e;
  ASSERT_TRUE(terms::rate_surrogate(0.4, 1.7, 80.0, 1.5, e));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> evd(e.hess);
  EXPECT_LE(evd.eigenvalues().maxCoeff(), 1e-12);
}

TEST(BarrierTerms, PowerCompositeDerivatives) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double alpha : {2.0, 2.5, 3.0, 4.0}) {
    for (int k = 0; k < 25; ++k) {
      const Eigen::Vector3d x(u(rng), u(rng), 1.0 + 0.2 * u(rng));
      const double phi = std::pow(x.squaredNorm(), 0.5 * alpha);
      const double z2 = phi * (1.05 + 0.5 * std::abs(u(rng)));
      auto f = [&](const Eigen::Vector4d& y, Eval4& e) {
        return terms::power_composite_barrier(y.head<3>(), y(3), alpha, e);
      };
      Eigen::Vector4d y;
      y << x, z2;
      check_fd<4, Eval4>(f, y, 1e-5);
    }
  }
}

TEST(BarrierTerms, PowerCompositeConvex) {
  Eval4 e;
  ASSERT_TRUE(terms::power_composite_barrier(Eigen::Vector3d(0.3, -0.2, 1.1), 2.0, 2.0, e));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> evd(e.hess);
  EXPECT_GE(evd.eigenvalues().minCoeff(), -1e-10);
}

TEST(BarrierTerms, BallDerivatives) {
  auto f = [](const Eigen::Vector2d& d, Eval2& e) { return terms::ball_barrier(d, 2.0, e); };
  check_fd<2, Eval2>(f, Eigen::Vector2d(0.4, -0.9), 1e-5);
}

TEST(BarrierTerms, OutsideDomainLeavesOutput) {
  Eval2 e;
  e.value = 7.0;
  EXPECT_FALSE(terms::ball_barrier(Eigen::Vector2d(2.0, 0.0), 1.0, e));
  EXPECT_FALSE(terms::rate_surrogate(-1.0, 0.5, 10.0, 1.0, e));
  EXPECT_EQ(e.value, 7.0);
  Eval4 e4;
  EXPECT_FALSE(terms::power_composite_barrier(Eigen::Vector3d(1.0, 1.0, 1.0), 1.0, 2.0, e4));
}

}  // namespace
}  // namespace cuav
