#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "cuav/block_tridiagonal.hpp"

namespace cuav {
namespace {

BlockTridiagonal random_spd(int n, int b, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BlockTridiagonal m(n, b);
  for (int i = 0; i < n; ++i) {
    BlockTridiagonal::Block r(b, b);
    for (int a = 0; a < b; ++a)
      for (int c = 0; c < b; ++c) r(a, c) = u(rng);
    m.diag(i) = r * r.transpose();
    m.diag(i).diagonal().array() += 2.0 * b + 1.0;
    if (i + 1 < n) {
      for (int a = 0; a < b; ++a)
        for (int c = 0; c < b; ++c) m.lower(i)(a, c) = u(rng);
    }
  }
  return m;
}

TEST(BlockTridiagonal, SolveMatchesDense) {
  for (int b : {4, 5}) {
    for (int n : {1, 2, 7, 20}) {
      const BlockTridiagonal m = random_spd(n, b, 100 * n + b);
      const Eigen::MatrixXd d = m.to_dense();
      ASSERT_TRUE(d.isApprox(d.transpose()));
      const Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(m.dim(), -1.0, 2.0);
      Eigen::VectorXd x;
      ASSERT_TRUE(m.solve(rhs, x));
      const Eigen::VectorXd ref = d.ldlt().solve(rhs);
      EXPECT_LE((x - ref).norm(), 1e-10 * ref.norm()) << "n=" << n << " b=" << b;
    }
  }
}

TEST(BlockTridiagonal, MultiplyMatchesDense) {
  const BlockTridiagonal m = random_spd(6, 5, 3);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(m.dim(), 0.5, -3.0);
  EXPECT_LE((m.multiply(x) - m.to_dense() * x).norm(), 1e-12 * x.norm());
}

TEST(BlockTridiagonal, IndefiniteReportsFailure) {
  BlockTridiagonal m = random_spd(4, 4, 9);
  m.diag(2) *= -1.0;
  Eigen::VectorXd x;
  EXPECT_FALSE(m.solve(Eigen::VectorXd::Ones(m.dim()), x));
}

TEST(BlockTridiagonal, SetZeroClears) {
  BlockTridiagonal m = random_spd(3, 4, 1);
  m.set_zero();
  EXPECT_EQ(m.to_dense().norm(), 0.0);
}

}  // namespace
}  // namespace cuav
