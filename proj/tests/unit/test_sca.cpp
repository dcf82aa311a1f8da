#include <cmath>

#include <gtest/gtest.h>

#include "cuav/errors.hpp"
#include "cuav/trajectory.hpp"
#include "cuav/units.hpp"

namespace cuav {
namespace {

// Small mission: two PRs flanking a 600 m corridor, 61 slots.
Scenario corridor(double gamma_dbm = -70.0, double p_dbm = 23.0) {
  ScenarioParams p;
  p.pr_locations = {Vec2(-100.0, 150.0), Vec2(150.0, -120.0)};
  p.gamma_it = dbm_to_watts(gamma_dbm);
  p.p_max = dbm_to_watts(p_dbm);
  return Scenario(p);
}

MissionProfile corridor_mission(double t = 60.0) {
  MissionProfile m;
  m.q_initial = Vec2(-300.0, 0.0);
  m.q_final = Vec2(300.0, 0.0);
  m.duration_t = t;
  return m;
}

TEST(Sca, AscentFromInitialTrajectory) {
  const Scenario s = corridor();
  const MissionProfile m = corridor_mission();
  PlanOptions po;
  po.sca.keep_iterates = true;
  const PlanResult r = plan(s, m, po);
  const ScaState& st = r.state;
  ASSERT_FALSE(st.history.empty());
  EXPECT_DOUBLE_EQ(st.history.front(), r.init.avg_rate);
  EXPECT_GT(st.iterations, 0);
  for (std::size_t i = 1; i < st.history.size(); ++i) EXPECT_GE(st.history[i], st.history[i - 1]);
  for (double v : st.violation) EXPECT_LE(v, 1e-6);
  for (const Trajectory& t : st.iterates) EXPECT_LE(check_trajectory(s, m, t).worst(), 1e-6);
  EXPECT_GE(r.traj.avg_rate, r.init.avg_rate);
  EXPECT_LE(check_trajectory(s, m, r.traj).worst(), 1e-6);
  EXPECT_TRUE(st.converged);
}

TEST(Sca, SurrogateNeverExceedsExact) {
  // The subproblem optimum is a lower bound on the exact rate at its solution.
  const Scenario s = corridor();
  const MissionProfile m = corridor_mission();
  PlanOptions po;
  po.sca.keep_iterates = true;
  const PlanResult r = plan(s, m, po);
  ASSERT_EQ(r.state.surrogate.size(), r.state.iterates.size());
  for (std::size_t i = 0; i < r.state.iterates.size(); ++i) {
    EXPECT_LE(r.state.surrogate[i], r.state.iterates[i].avg_rate + 1e-9);
  }
}

TEST(Sca, FrozenAltitudeStaysPut) {
  const Scenario s = corridor();
  const MissionProfile m = corridor_mission();
  PlanOptions po;
  po.fixed_altitude = true;
  const PlanResult r = plan(s, m, po);
  for (double z : r.traj.z) EXPECT_DOUBLE_EQ(z, s.h_min());
  EXPECT_GE(r.traj.avg_rate, r.init.avg_rate);
}

TEST(Sca, WarmStartDominatesBothStarts) {
  const Scenario s = corridor();
  const MissionProfile m = corridor_mission();
  PlanOptions flat;
  flat.fixed_altitude = true;
  const double r2d = plan(s, m, flat).traj.avg_rate;
  const double r3d = plan(s, m).traj.avg_rate;
  PlanOptions warm;
  warm.warm_start_2d = true;
  const PlanResult rw = plan(s, m, warm);
  ASSERT_TRUE(rw.state_2d.has_value());
  EXPECT_GE(rw.traj.avg_rate, r2d - 1e-9);
  EXPECT_GE(rw.traj.avg_rate, r3d - 1e-9);
}

TEST(Sca, ZeroGammaReturnsInit) {
  ScenarioParams p;
  p.pr_locations = {Vec2(0.0, 100.0)};
  p.gamma_it = 0.0;
  const Scenario s(p);
  const PlanResult r = plan(s, corridor_mission());
  EXPECT_EQ(r.traj.avg_rate, 0.0);
  EXPECT_FALSE(r.state.warnings.empty());
}

TEST(Sca, EqualAltitudeLimitsFreeze) {
  ScenarioParams p;
  p.pr_locations = {Vec2(-100.0, 150.0)};
  p.gamma_it = dbm_to_watts(-70.0);
  p.h_max = p.h_min;
  const Scenario s(p);
  const PlanResult r = plan(s, corridor_mission());
  for (double z : r.traj.z) EXPECT_DOUBLE_EQ(z, 170.0);
}

TEST(Sca, MinimumDurationHasNoRoom) {
  const Scenario s = corridor();
  MissionProfile m = corridor_mission();
  m.duration_t = min_duration(m);
  const PlanResult r = plan(s, m);
  EXPECT_NEAR(r.traj.avg_rate, r.init.avg_rate, 1e-12);
  EXPECT_LE(check_trajectory(s, m, r.traj).worst(), 1e-9);
}

TEST(Sca, LongerMissionNotWorse) {
  const Scenario s = corridor();
  double prev = 0.0;
  for (double t : {40.0, 60.0, 90.0}) {
    const double r = plan(s, corridor_mission(t)).traj.avg_rate;
    EXPECT_GE(r, prev - 1e-6) << t;
    prev = r;
  }
}

TEST(Sca, BadInitRejected) {
  const Scenario s = corridor();
  Trajectory t;
  EXPECT_THROW(sca_optimize(s, corridor_mission(), t), InvalidArgument);
}

}  // namespace
}  // namespace cuav
