#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cuav/scenario.hpp"

namespace cuav {

/// Lifted 3x3 feasibility problem at SNR level tau, in the p_hat = p^(2/alpha)
/// domain. S plays the role of [q; 1][q; 1]^T. Find (S, p_hat) with
///
///   Tr(A S) + alt_sq <= p_hat / tau
///   Tr(B_k S) + alt_sq >= it_ratio * p_hat      for all k
///   Tr(C S) = 1,  0 <= p_hat <= p_hat_max,  S PSD.
///
/// With `fixed_power` the roles change: p_hat is pinned at p_hat_max and
/// alt_sq (the squared altitude) becomes a variable in [alt_sq_min, alt_sq_max].
/// Otherwise alt_sq == alt_sq_min.
struct SdpInstance {
  std::vector<Vec2> pr_locations;
  double tau = 0.0;
  double it_ratio = 1.0;   // beta0_hat / gamma_hat
  double p_hat_max = 1.0;
  double alt_sq_min = 1.0;
  double alt_sq_max = 1.0;
  bool fixed_power = false;

  static Eigen::Matrix3d a_mat();
  static Eigen::Matrix3d c_mat();
  Eigen::Matrix3d b_mat(std::size_t k) const;

  /// Throws InvalidArgument on a malformed instance.
  void validate() const;
};

enum class SdpStatus { Feasible, Infeasible, Indeterminate };

const char* to_string(SdpStatus s);

struct SdpOptions {
  double eps_feas = 1e-8;
  int max_newton = 200;
  int max_stages = 12;
  /// Stop as soon as an iterate with nonnegative slack appears. The final
  /// extraction solve disables this to get a point close to the optimal face.
  bool stop_when_feasible = true;
  /// Phase-I start for S (physical units). Ignored unless strictly PD.
  std::optional<Eigen::Matrix3d> warm_start;
};

struct SdpOutcome {
  SdpStatus status = SdpStatus::Indeterminate;
  Eigen::Matrix3d s_mat = Eigen::Matrix3d::Zero();  // physical units
  double p_hat = 0.0;
  double alt_sq = 0.0;
  double max_slack = 0.0;  // phase-I t, normalized units
  int newton_steps = 0;
  int stages = 0;
  double residual = 0.0;  // worst normalized constraint violation of the returned point
};

SdpOutcome solve_sdp_feasibility(const SdpInstance& inst, const SdpOptions& opts = {});

}  // namespace cuav
