#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cuav/placement.hpp"
#include "cuav/scenario.hpp"
#include "cuav/smooth_convex.hpp"

namespace cuav {

/// Sampled trajectory: slot n (0-based here) sits at t = n * delta_t.
struct Trajectory {
  std::vector<Vec2> q;
  std::vector<double> z;
  std::vector<double> p;
  std::vector<double> rate;
  std::vector<double> it_margin_db;  // worst PR
  std::vector<std::size_t> nearest_pr;
  double avg_rate = 0.0;
  double duration_t = 0.0;
  double delta_t = 0.0;

  std::size_t n_slots() const { return q.size(); }
  Position3D pos(std::size_t n) const { return {q[n], z[n]}; }
};

/// Straight-line flight time at maximum speeds.
double min_duration(const MissionProfile& m);

/// Resolved slot count: m.n_slots, or ceil(T / 1 s) + 1 when it is 0.
std::size_t slot_count(const MissionProfile& m);

/// min(P, min_k (Gamma / beta0) (z^2 + |q - w_k|^2)^(alpha/2)) per slot.
std::vector<double> optimal_power_profile(const Scenario& s, const std::vector<Vec2>& q,
                                          const std::vector<double>& z);

/// Fills powers, rates and margins for a path.
Trajectory make_trajectory(const Scenario& s, double duration_t, std::vector<Vec2> q,
                           std::vector<double> z);

/// First-order lower bound on (Gamma / beta0)(|q - w_k|^2 + z^2)^(alpha/2)
/// expanded at `at`, evaluated at `x`. Watts.
double it_linearization(const Scenario& s, const Position3D& at, const Position3D& x, std::size_t k);

/// Largest violation of the flight constraints, each relative to its limit.
struct FeasibilityReport {
  double horizontal = 0.0;
  double vertical = 0.0;
  double altitude = 0.0;
  double endpoints = 0.0;
  double interference = 0.0;  // max_k,n Q_k[n] / Gamma - 1, clipped at 0
  double worst() const;
};

FeasibilityReport check_trajectory(const Scenario& s, const MissionProfile& m, const Trajectory& t);

enum class InitKind { FlyHoverFly, Straight };

struct InitInfo {
  InitKind kind = InitKind::Straight;
  double t_fly = 0.0;
  double hover_s = 0.0;
  std::size_t hover_slots = 0;  // slots strictly inside the hover interval
  Vec2 hover_q = Vec2::Zero();
};

/// Fly-hover-fly path through the placement optimum, or straight flight when
/// T < T_fly. Throws InfeasibleMission when T < T_min.
Trajectory initial_trajectory(const Scenario& s, const MissionProfile& m, const PlacementSolution& place,
                              InitInfo* info = nullptr);

/// Constant-velocity flight between the endpoints.
Trajectory straight_trajectory(const Scenario& s, const MissionProfile& m);

struct ScaOptions {
  double eps_sca = 1e-4;  // bps/Hz, absolute on the average rate
  int max_iters = 50;
  bool freeze_z = false;  // keep the altitude profile of the initial trajectory
  double interior_pull = 1e-3;
  double zeta_margin = 1e-3;
  BarrierOptions barrier;
  bool keep_iterates = false;
};

struct ScaState {
  std::vector<Vec2> q;
  std::vector<double> z;
  std::vector<double> zeta1;  // W, free slots
  std::vector<double> zeta2;  // m^alpha, free slots
  int iterations = 0;
  std::vector<double> history;    // exact average rate of each accepted point; [0] is the init
  std::vector<double> surrogate;  // subproblem optimum (average over N slots)
  std::vector<double> violation;  // FeasibilityReport::worst of every subproblem solution
  int newton_steps = 0;
  bool converged = false;
  bool degraded = false;
  std::vector<std::string> warnings;
  std::vector<Trajectory> iterates;  // only with keep_iterates
};

struct ScaResult {
  Trajectory traj;
  ScaState state;
};

ScaResult sca_optimize(const Scenario& s, const MissionProfile& m, const Trajectory& init,
                       const ScaOptions& opts = {});

struct PlanOptions {
  PlacementOptions placement;
  ScaOptions sca;
  bool fixed_altitude = false;  // 2D variant: hover at h_min, altitude frozen
  bool warm_start_2d = false;   // also start 3D SCA from the 2D solution, keep the better
};

struct PlanResult {
  Trajectory traj;
  Trajectory init;
  InitInfo init_info;
  PlacementSolution placement;
  ScaState state;
  std::optional<ScaState> state_2d;
  bool warm_started = false;  // the returned path came from the 2D start
  double t_min = 0.0;
};

PlanResult plan(const Scenario& s, const MissionProfile& m, const PlanOptions& opts = {});

}  // namespace cuav
