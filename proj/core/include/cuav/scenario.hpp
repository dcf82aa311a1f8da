#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace cuav {

using Vec2 = Eigen::Vector2d;

/// UAV location: horizontal coordinate (m) relative to the SR, which sits at
/// the origin, plus altitude (m).
struct Position3D {
  Vec2 q = Vec2::Zero();
  double z = 0.0;
};

/// Raw, unvalidated scenario quantities in linear SI units.
struct ScenarioParams {
  std::vector<Vec2> pr_locations;
  double beta_u = 1e-3;   // reference gain UAV -> SR
  double beta_0 = 1e-3;   // worst-case reference gain UAV -> PRs
  double sigma2 = 1e-11;  // noise + terrestrial interference at SR, W
  double alpha = 2.0;     // path-loss exponent
  double gamma_it = 1e-11;  // interference temperature threshold, W
  double p_max = 0.19952623149688797;  // 23 dBm
  double h_min = 170.0;
  double h_max = 220.0;
};

/// Immutable problem instance. The constructor enforces the invariants
/// (non-empty finite PR set, alpha >= 2, 0 < h_min <= h_max, p_max > 0,
/// gamma_it >= 0, positive gains and noise) and throws InvalidArgument.
class Scenario {
 public:
  explicit Scenario(ScenarioParams params);

  const std::vector<Vec2>& pr_locations() const noexcept { return p_.pr_locations; }
  std::size_t num_prs() const noexcept { return p_.pr_locations.size(); }
  const Vec2& pr(std::size_t k) const;

  double beta_u() const noexcept { return p_.beta_u; }
  double beta_0() const noexcept { return p_.beta_0; }
  double sigma2() const noexcept { return p_.sigma2; }
  double alpha() const noexcept { return p_.alpha; }
  double gamma_it() const noexcept { return p_.gamma_it; }
  double p_max() const noexcept { return p_.p_max; }
  double h_min() const noexcept { return p_.h_min; }
  double h_max() const noexcept { return p_.h_max; }
  /// Reference SNR beta_u / sigma2.
  double eta_u() const noexcept { return eta_u_; }

  const ScenarioParams& params() const noexcept { return p_; }

 private:
  ScenarioParams p_;
  double eta_u_;
};

/// Flight constraints for the mobile scenario. `n_slots == 0` requests the
/// default slot count (one slot per second of mission time, plus one).
struct MissionProfile {
  Vec2 q_initial = Vec2(-950.0, 1000.0);
  Vec2 q_final = Vec2(1000.0, -1000.0);
  double z_initial = 170.0;
  double z_final = 170.0;
  double v_h = 26.0;  // max horizontal speed, m/s
  double v_a = 6.0;   // max ascend speed, m/s
  double v_d = 4.0;   // max descend speed, m/s
  double duration_t = 200.0;
  std::size_t n_slots = 0;

  /// Checks altitude bounds against `s`, positive speeds and n_slots
  /// (0 or >= 2). Does not check the duration against T_min.
  void validate(const Scenario& s) const;
};

}  // namespace cuav
