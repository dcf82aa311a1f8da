#include <string>

#include <gtest/gtest.h>

#include "cuav/config.hpp"
#include "cuav/errors.hpp"
#include "cuav/units.hpp"

namespace cuav {
namespace {

const char* kFull = R"(
prs = [[100.0, 0.0], [-50, 20]]
beta_u_db = -30
beta_0_db = "-30 dB"
sigma2_dbm = -80
alpha = 2
gamma_dbm = "-80 dBm"
p_max_dbm = 23
h_min_m = "170 m"
h_max_m = 220

[mission]
q_initial = [-950, 1000]
q_final = [1000, -1000]
z_initial = 170
z_final = "180 m"
v_h = "26 m/s"
v_a = 6
v_d = 4
t_seconds = "200 s"
n_slots = 51
)";

TEST(Config, ParsesAllFieldsAndUnits) {
  const ScenarioFile f = parse_scenario(kFull);
  const Scenario& s = f.scenario;
  ASSERT_EQ(s.num_prs(), 2u);
  EXPECT_EQ(s.pr(1), Vec2(-50.0, 20.0));
  EXPECT_NEAR(s.beta_0(), 1e-3, 1e-18);
  EXPECT_NEAR(s.gamma_it(), 1e-11, 1e-24);
  EXPECT_NEAR(s.p_max(), dbm_to_watts(23.0), 1e-15);
  EXPECT_DOUBLE_EQ(s.h_min(), 170.0);
  ASSERT_TRUE(f.mission.has_value());
  EXPECT_DOUBLE_EQ(f.mission->z_final, 180.0);
  EXPECT_DOUBLE_EQ(f.mission->v_h, 26.0);
  EXPECT_DOUBLE_EQ(f.mission->duration_t, 200.0);
  EXPECT_EQ(f.mission->n_slots, 51u);
}

TEST(Config, OmittedFieldsTakeDefaults) {
  const ScenarioFile f = parse_scenario("prs = [[10, 0]]\n");
  EXPECT_DOUBLE_EQ(f.scenario.alpha(), 2.0);
  EXPECT_NEAR(f.scenario.p_max(), dbm_to_watts(23.0), 1e-15);
  EXPECT_FALSE(f.mission.has_value());
}

TEST(Config, RoundTripIsExact) {
  const ScenarioFile f = parse_scenario(kFull);
  const std::string text = format_scenario(f.scenario, f.mission);
  const ScenarioFile g = parse_scenario(text);
  EXPECT_EQ(format_scenario(g.scenario, g.mission), text);
  EXPECT_EQ(g.scenario.gamma_it(), f.scenario.gamma_it());
  EXPECT_EQ(g.scenario.pr(1), f.scenario.pr(1));
  EXPECT_EQ(g.mission->n_slots, f.mission->n_slots);
}

TEST(Config, NonFiniteValueRejected) {
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\ngamma_dbm = inf\n"), ConfigError);
}

TEST(Config, RejectsUnknownKey) {
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\ngama_dbm = -80\n"), ConfigError);
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\n[mission]\nspeed = 3\n"), ConfigError);
}

TEST(Config, RejectsWrongUnit) {
  try {
    parse_scenario("prs = [[10, 0]]\ngamma_dbm = \"-80 dB\"\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("dBm"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\nh_min_m = \"170 km\"\n"), ConfigError);
}

TEST(Config, RejectsMissingPrs) { EXPECT_THROW(parse_scenario("alpha = 2\n"), ConfigError); }

TEST(Config, RejectsMalformedPoint) {
  EXPECT_THROW(parse_scenario("prs = [[10, 0, 3]]\n"), ConfigError);
  EXPECT_THROW(parse_scenario("prs = [\"a\"]\n"), ConfigError);
}

TEST(Config, InvariantViolationBecomesConfigError) {
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\nh_min_m = 300\n"), ConfigError);
  EXPECT_THROW(parse_scenario("prs = [[10, 0]]\n[mission]\nz_initial = 100\n"), ConfigError);
}

TEST(Config, SyntaxErrorCarriesLocation) {
  try {
    parse_scenario("prs = [[10, 0]]\nalpha = = 2\n", "s.toml");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("s.toml:2:"), std::string::npos) << e.what();
  }
}

TEST(Config, MissionFromTopLevelOrTable) {
  const MissionProfile a = parse_mission("t_seconds = 150\nv_h = 20\n");
  EXPECT_DOUBLE_EQ(a.duration_t, 150.0);
  EXPECT_DOUBLE_EQ(a.v_h, 20.0);
  const MissionProfile b = parse_mission(kFull);
  EXPECT_DOUBLE_EQ(b.z_final, 180.0);
  EXPECT_THROW(parse_mission("n_slots = -3\n"), ConfigError);
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_scenario("/nonexistent/none.toml"), ConfigError);
}

TEST(Config, ShippedDataFilesLoad) {
  for (const char* name : {"single_pr.toml", "three_pr_same_side.toml", "random_k_sweep.toml",
                           "mobile_k10.toml"}) {
    EXPECT_NO_THROW(load_scenario(std::string(CUAV_DATA_DIR) + "/" + name)) << name;
  }
  EXPECT_NO_THROW(load_mission(std::string(CUAV_DATA_DIR) + "/mission_short.toml"));
}

}  // namespace
}  // namespace cuav
