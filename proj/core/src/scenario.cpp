#include "cuav/scenario.hpp"

#include <cmath>
#include <string>

#include "cuav/errors.hpp"

namespace cuav {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument("invalid scenario: " + what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Scenario::Scenario(ScenarioParams params) : p_(std::move(params)) {
  require(!p_.pr_locations.empty(), "at least one PR location is required");
  for (const auto& w : p_.pr_locations) {
    require(finite(w.x()) && finite(w.y()), "PR locations must be finite");
  }
  require(finite(p_.beta_u) && p_.beta_u > 0.0, "beta_u must be positive");
  require(finite(p_.beta_0) && p_.beta_0 > 0.0, "beta_0 must be positive");
  require(finite(p_.sigma2) && p_.sigma2 > 0.0, "sigma2 must be positive");
  require(finite(p_.alpha) && p_.alpha >= 2.0, "alpha must be >= 2");
  require(finite(p_.gamma_it) && p_.gamma_it >= 0.0, "gamma must be >= 0");
  require(finite(p_.p_max) && p_.p_max > 0.0, "p_max must be positive");
  require(finite(p_.h_min) && p_.h_min > 0.0, "h_min must be positive");
  require(finite(p_.h_max) && p_.h_max >= p_.h_min, "h_max must be >= h_min");
  eta_u_ = p_.beta_u / p_.sigma2;
}

const Vec2& Scenario::pr(std::size_t k) const {
  if (k >= p_.pr_locations.size()) {
    throw InvalidArgument("PR index " + std::to_string(k) + " out of range (K = " +
                          std::to_string(p_.pr_locations.size()) + ")");
  }
  return p_.pr_locations[k];
}

void MissionProfile::validate(const Scenario& s) const {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument("invalid mission: " + what);
  };
  check(q_initial.allFinite() && q_final.allFinite(), "endpoints must be finite");
  check(z_initial >= s.h_min() && z_initial <= s.h_max(),
        "z_initial must lie in [h_min, h_max]");
  check(z_final >= s.h_min() && z_final <= s.h_max(),
        "z_final must lie in [h_min, h_max]");
  check(std::isfinite(v_h) && v_h > 0.0, "v_h must be positive");
  check(std::isfinite(v_a) && v_a > 0.0, "v_a must be positive");
  check(std::isfinite(v_d) && v_d > 0.0, "v_d must be positive");
  check(std::isfinite(duration_t) && duration_t > 0.0, "duration must be positive");
  check(n_slots == 0 || n_slots >= 2, "n_slots must be >= 2");
}

}  // namespace cuav
