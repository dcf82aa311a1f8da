#include <limits>

#include <gtest/gtest.h>

#include "cuav/errors.hpp"
#include "cuav/scenario.hpp"

namespace cuav {
namespace {

ScenarioParams base() {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0)};
  return p;
}

TEST(Scenario, DefaultsMatchReferenceSetup) {
  const Scenario s(base());
  EXPECT_DOUBLE_EQ(s.beta_u(), 1e-3);
  EXPECT_DOUBLE_EQ(s.sigma2(), 1e-11);
  EXPECT_DOUBLE_EQ(s.eta_u(), 1e8);
  EXPECT_DOUBLE_EQ(s.h_min(), 170.0);
  EXPECT_DOUBLE_EQ(s.h_max(), 220.0);
}

TEST(Scenario, RejectsBadInvariants) {
  auto bad = [](auto mutate) {
    ScenarioParams p = base();
    mutate(p);
    EXPECT_THROW(Scenario{p}, InvalidArgument);
  };
  bad([](ScenarioParams& p) { p.pr_locations.clear(); });
  bad([](ScenarioParams& p) { p.alpha = 1.5; });
  bad([](ScenarioParams& p) { p.h_min = 0.0; });
  bad([](ScenarioParams& p) { p.h_max = 100.0; });
  bad([](ScenarioParams& p) { p.p_max = 0.0; });
  bad([](ScenarioParams& p) { p.gamma_it = -1.0; });
  bad([](ScenarioParams& p) { p.sigma2 = 0.0; });
  bad([](ScenarioParams& p) { p.pr_locations[0].x() = std::numeric_limits<double>::infinity(); });
}

TEST(Scenario, PrIndexChecked) {
  const Scenario s(base());
  EXPECT_NO_THROW(s.pr(0));
  EXPECT_THROW(s.pr(1), InvalidArgument);
}

TEST(Mission, ValidateRejectsBadProfiles) {
  const Scenario s(base());
  MissionProfile m;
  EXPECT_NO_THROW(m.validate(s));
  MissionProfile low = m;
  low.z_initial = 100.0;
  EXPECT_THROW(low.validate(s), InvalidArgument);
  MissionProfile slow = m;
  slow.v_h = 0.0;
  EXPECT_THROW(slow.validate(s), InvalidArgument);
  MissionProfile one = m;
  one.n_slots = 1;
  EXPECT_THROW(one.validate(s), InvalidArgument);
}

}  // namespace
}  // namespace cuav
