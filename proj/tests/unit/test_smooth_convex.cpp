#include <cmath>

#include <gtest/gtest.h>

#include "cuav/errors.hpp"
#include "cuav/smooth_convex.hpp"
#include "programs.hpp"

namespace cuav {
namespace {

using testing::random_program;

double barrier_value(const SmoothConvexProgram& p, const Eigen::VectorXd& v,
                     const std::vector<SlotPoint>& frozen, double t) {
  double f = 0.0;
  EXPECT_TRUE(barrier_derivatives(p, unpack(p, v, frozen), t, f, nullptr, nullptr));
  return f;
}

TEST(SmoothConvex, StartIsStrictlyFeasible) {
  for (bool freeze : {false, true}) {
    for (int n : {1, 3, 12}) {
      const auto rp = random_program(n, freeze, 5 + n);
      EXPECT_TRUE(strictly_feasible(rp.prog, rp.start)) << n;
    }
  }
}

TEST(SmoothConvex, PackRoundTrip) {
  for (bool freeze : {false, true}) {
    const auto rp = random_program(6, freeze, 2);
    const auto x = unpack(rp.prog, pack(rp.prog, rp.start), rp.start);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(x[i].q, rp.start[i].q);
      EXPECT_EQ(x[i].z, rp.start[i].z);
      EXPECT_EQ(x[i].zeta1, rp.start[i].zeta1);
      EXPECT_EQ(x[i].zeta2, rp.start[i].zeta2);
    }
  }
}

TEST(SmoothConvex, ConstraintCount) {
  const auto rp = random_program(4, false, 1);
  // Per slot: zeta1 > 0, zeta1 < 1, power composite, 2 IT rows, 2 altitude
  // bounds; per edge (5 of them): ball plus two vertical rows.
  EXPECT_EQ(rp.prog.num_constraints(), 4u * 7u + 5u * 3u);
  const auto flat = random_program(4, true, 1);
  EXPECT_EQ(flat.prog.num_constraints(), 4u * 5u + 5u);
}

TEST(SmoothConvex, BarrierDerivativesMatchFiniteDifferences) {
  for (bool freeze : {false, true}) {
    for (double alpha : {2.0, 3.0}) {
      const auto rp = random_program(5, freeze, 17, alpha);
      const auto& p = rp.prog;
      const double t = 3.7;
      const Eigen::VectorXd x0 = pack(p, rp.start);
      double f0;
      Eigen::VectorXd g;
      BlockTridiagonal h(static_cast<int>(rp.start.size()), p.block_size());
      ASSERT_TRUE(barrier_derivatives(p, rp.start, t, f0, &g, &h));
      const Eigen::MatrixXd hd = h.to_dense();
      for (Eigen::Index i = 0; i < x0.size(); ++i) {
        const double step = 1e-6 * std::max(1.0, std::abs(x0(i)));
        Eigen::VectorXd xp = x0, xm = x0;
        xp(i) += step;
        xm(i) -= step;
        const double fd = (barrier_value(p, xp, rp.start, t) - barrier_value(p, xm, rp.start, t)) /
                          (2 * step);
        EXPECT_NEAR(fd, g(i), 1e-5 * std::max(std::abs(g(i)), 1e-3 * g.norm())) << i;
        double fp, fm;
        Eigen::VectorXd gp, gm;
        ASSERT_TRUE(barrier_derivatives(p, unpack(p, xp, rp.start), t, fp, &gp, nullptr));
        ASSERT_TRUE(barrier_derivatives(p, unpack(p, xm, rp.start), t, fm, &gm, nullptr));
        const Eigen::VectorXd col = (gp - gm) / (2 * step);
        EXPECT_LE((col - hd.col(i)).norm(), 1e-5 * std::max(hd.col(i).norm(), 1e-3 * hd.norm()))
            << "column " << i;
      }
    }
  }
}

TEST(SmoothConvex, BandedAndDenseAgree) {
  for (int n : {1, 4, 10, 20}) {
    for (bool freeze : {false, true}) {
      const auto rp = random_program(n, freeze, 31 + n);
      BarrierOptions ob, od;
      od.solver = LinearSolver::Dense;
      const BarrierResult a = solve_smooth_convex(rp.prog, rp.start, ob);
      const BarrierResult b = solve_smooth_convex(rp.prog, rp.start, od);
      const Eigen::VectorXd va = pack(rp.prog, a.x), vb = pack(rp.prog, b.x);
      EXPECT_LE((va - vb).norm(), 1e-8 * std::max(1.0, vb.norm())) << "n=" << n;
      EXPECT_NEAR(a.objective, b.objective, 1e-8 * std::max(1.0, std::abs(b.objective)));
    }
  }
}

TEST(SmoothConvex, SolutionImprovesAndStaysFeasible) {
  const auto rp = random_program(15, false, 77);
  const BarrierResult r = solve_smooth_convex(rp.prog, rp.start);
  EXPECT_TRUE(strictly_feasible(rp.prog, r.x));
  EXPECT_GE(r.objective, smooth_objective(rp.prog, rp.start));
  EXPECT_FALSE(r.degraded);
  EXPECT_LE(r.duality_gap, 1e-7 * (1.0 + std::abs(r.objective)));
}

TEST(SmoothConvex, DualityGapBoundsSuboptimality) {
  // A tighter run should not beat the default by more than the reported gap.
  const auto rp = random_program(8, false, 12);
  const BarrierResult a = solve_smooth_convex(rp.prog, rp.start);
  BarrierOptions tight;
  tight.tol = 1e-10;
  tight.max_stages = 16;
  const BarrierResult b = solve_smooth_convex(rp.prog, rp.start, tight);
  EXPECT_LE(b.objective - a.objective, a.duality_gap + 1e-9);
}

TEST(SmoothConvex, InfeasibleStartThrows) {
  auto rp = random_program(3, false, 4);
  rp.start[1].zeta1 = 2.0;
  EXPECT_FALSE(strictly_feasible(rp.prog, rp.start));
  EXPECT_THROW(solve_smooth_convex(rp.prog, rp.start), SolverError);
}

}  // namespace
}  // namespace cuav
