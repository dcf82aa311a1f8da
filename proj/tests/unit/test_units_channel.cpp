#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cuav/channel.hpp"
#include "cuav/errors.hpp"
#include "cuav/units.hpp"

namespace cuav {
namespace {

Scenario one_pr(Vec2 w = Vec2(100.0, 0.0)) {
  ScenarioParams p;
  p.pr_locations = {w};
  return Scenario(p);
}

TEST(Units, DbmRoundTrip) {
  EXPECT_NEAR(dbm_to_watts(23.0), 0.19952623149688797, 1e-15);
  EXPECT_NEAR(dbm_to_watts(-80.0), 1e-11, 1e-24);
  EXPECT_NEAR(db_to_linear(-30.0), 1e-3, 1e-18);
  for (double x : {-120.0, -3.3, 0.0, 17.0, 46.0}) {
    EXPECT_NEAR(watts_to_dbm(dbm_to_watts(x)), x, 1e-12);
    EXPECT_NEAR(linear_to_db(db_to_linear(x)), x, 1e-12);
  }
}

TEST(Channel, GainAboveSr) {
  const Scenario s = one_pr();
  EXPECT_NEAR(channel_gain_sr(s, {Vec2::Zero(), 170.0}), 1e-3 / (170.0 * 170.0), 1e-20);
  EXPECT_NEAR(channel_gain_sr(s, {Vec2::Zero(), 170.0}), 3.460e-8, 1e-11);
}

TEST(Channel, InterferenceAtTightPoint) {
  const Scenario s = one_pr();
  const double q = interference_at_pr(s, {Vec2::Zero(), 170.0}, 3.89e-4, 0);
  EXPECT_NEAR(q / 1e-11, 1.0, 5e-3);
}

TEST(Channel, RateMatchesDirectFormula) {
  const Scenario s = one_pr();
  const Position3D pos{Vec2(30.0, -40.0), 180.0};
  const double d2 = 30.0 * 30.0 + 40.0 * 40.0 + 180.0 * 180.0;
  const double eta = 1e-3 / 1e-11;
  EXPECT_NEAR(achievable_rate(s, pos, 0.01), std::log2(1.0 + eta * 0.01 / d2), 1e-12);
  EXPECT_EQ(achievable_rate(s, pos, 0.0), 0.0);
}

TEST(Channel, OptimalPowerIsMinOfLimits) {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0), Vec2(0.0, 300.0)};
  const Scenario s(p);
  const Position3D pos{Vec2(10.0, 10.0), 170.0};
  const double l0 = 1e-11 / 1e-3 * (90.0 * 90.0 + 100.0 + 170.0 * 170.0);
  const double l1 = 1e-11 / 1e-3 * (100.0 + 290.0 * 290.0 + 170.0 * 170.0);
  EXPECT_NEAR(it_power_limit(s, pos, 0), l0, 1e-15);
  EXPECT_NEAR(it_power_limit(s, pos, 1), l1, 1e-15);
  EXPECT_NEAR(optimal_power(s, pos), std::min({l0, l1, s.p_max()}), 1e-15);
  EXPECT_NEAR(worst_it_margin_db(s, pos, optimal_power(s, pos)), 0.0, 1e-9);
}

TEST(Channel, LargeGammaCapsAtPmax) {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0)};
  p.gamma_it = 1.0;
  const Scenario s(p);
  EXPECT_DOUBLE_EQ(optimal_power(s, {Vec2::Zero(), 170.0}), s.p_max());
}

TEST(Channel, NearestPrTieGoesToLowestIndex) {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0), Vec2(-100.0, 0.0), Vec2(0.0, 50.0)};
  const Scenario s(p);
  EXPECT_EQ(nearest_pr(s, Vec2(0.0, -100.0)), 0u);
  EXPECT_EQ(nearest_pr(s, Vec2(0.0, 40.0)), 2u);
  EXPECT_EQ(nearest_pr(s, Vec2(-90.0, 0.0)), 1u);
}

TEST(Channel, MarginInfiniteWhenSilent) {
  const Scenario s = one_pr();
  EXPECT_EQ(worst_it_margin_db(s, {Vec2::Zero(), 170.0}, 0.0), std::numeric_limits<double>::infinity());
}

TEST(Channel, NonFiniteInputRejected) {
  const Scenario s = one_pr();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(achievable_rate(s, {Vec2(nan, 0.0), 170.0}, 1.0), DomainError);
  EXPECT_THROW(interference_at_pr(s, {Vec2::Zero(), 170.0}, nan, 0), DomainError);
}

TEST(Channel, GeneralAlpha) {
  ScenarioParams p;
  p.pr_locations = {Vec2(100.0, 0.0)};
  p.alpha = 3.0;
  const Scenario s(p);
  const Position3D pos{Vec2(20.0, 0.0), 170.0};
  const double d2 = 20.0 * 20.0 + 170.0 * 170.0;
  EXPECT_NEAR(channel_gain_sr(s, pos), 1e-3 / std::pow(d2, 1.5), 1e-22);
  const double dk = 80.0 * 80.0 + 170.0 * 170.0;
  EXPECT_NEAR(it_power_limit(s, pos, 0), std::min(s.p_max(), 1e-8 * std::pow(dk, 1.5)), 1e-12);
}

}  // namespace
}  // namespace cuav
