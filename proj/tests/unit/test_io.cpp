#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cuav/io.hpp"
#include "cuav/placement.hpp"
#include "cuav/trajectory.hpp"
#include "cuav/units.hpp"

namespace cuav {
namespace {

Scenario single_pr() {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0)};
  return Scenario(p);
}

TEST(Io, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -127.19930100891841, 1e-300, 6.02e23}) {
    EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(2.5), "2.5");
}

TEST(Io, PlacementJsonFields) {
  const Scenario s = single_pr();
  const PlacementSolution sol = solve_placement(s);
  const auto j = nlohmann::json::parse(placement_to_json(s, sol, true));
  EXPECT_DOUBLE_EQ(j["position"]["x_m"].get<double>(), sol.pos.q.x());
  EXPECT_DOUBLE_EQ(j["power_w"].get<double>(), sol.p);
  EXPECT_NEAR(j["power_dbm"].get<double>(), watts_to_dbm(sol.p), 1e-12);
  EXPECT_EQ(j["method"], sol.method);
  EXPECT_EQ(j["it_margins_db"].size(), 1u);
  EXPECT_TRUE(j["diagnostics"].contains("rank_ratio"));
  EXPECT_EQ(j["diagnostics"]["trace"].size(), static_cast<std::size_t>(sol.diag.bisection_iters));
}

TEST(Io, TrajectoryCsvLayout) {
  const Scenario s = single_pr();
  MissionProfile m;
  m.q_initial = Vec2(-100.0, 0.0);
  m.q_final = Vec2(100.0, 0.0);
  m.duration_t = 10.0;
  const Trajectory t = straight_trajectory(s, m);
  const std::string csv = trajectory_to_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,t_s,x_m,y_m,z_m,p_dbm,rate_bpshz,worst_it_margin_db,nearest_pr");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 10), "1,0,-100,0");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 11);
}

TEST(Io, PlanJsonCarriesHistory) {
  const Scenario s = single_pr();
  MissionProfile m;
  m.q_initial = Vec2(-200.0, 0.0);
  m.q_final = Vec2(200.0, 0.0);
  m.duration_t = 30.0;
  const PlanResult r = plan(s, m);
  const auto j = nlohmann::json::parse(plan_to_json(s, r));
  EXPECT_EQ(j["slots"].size(), r.traj.n_slots());
  EXPECT_EQ(j["sca"]["history"].size(), r.state.history.size());
  EXPECT_DOUBLE_EQ(j["avg_rate_bpshz"].get<double>(), r.traj.avg_rate);
  EXPECT_EQ(j["slots"][0]["n"], 1);
}

TEST(Io, WriteOutputToFile) {
  const std::string path = ::testing::TempDir() + "cuav_io_test.txt";
  write_output(path, "abc\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "abc");
  std::remove(path.c_str());
}

}  // namespace
}  // namespace cuav
