#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuav/scenario.hpp"
#include "cuav/sdp_feasibility.hpp"

namespace cuav {

/// Best altitude and transformed power for a fixed horizontal location.
struct HorizontalOptimum {
  double z = 0.0;
  double p_hat = 0.0;
  int case_tag = 0;  // 1: closer to a PR than to the SR, 2: closer to the SR, 3: equidistant
  std::size_t nearest = 0;
};

HorizontalOptimum solve_given_horizontal(const Scenario& s, const Vec2& q);

struct PlacementOptions {
  double eps_bis = 1e-6;   // relative bisection gap, normalized tau units
  double eps_feas = 1e-8;
  double rank_tol = 1e-4;  // lambda2/lambda1 above this triggers randomization
  int samples = 200;
  std::uint64_t seed = 1;
};

struct BisectionStep {
  double tau = 0.0;
  SdpStatus status = SdpStatus::Indeterminate;
  double slack = 0.0;
  int newton_steps = 0;
};

struct PlacementDiagnostics {
  int bisection_iters = 0;
  int newton_steps = 0;
  double rank_ratio = 0.0;
  double tau_upper = 0.0;                // SDR bound on the achievable tau
  std::vector<double> it_margins_db;     // per PR, 10 log10(Gamma / Q_k)
  std::vector<BisectionStep> trace;
  std::vector<std::string> warnings;
};

struct PlacementSolution {
  Position3D pos;
  double p = 0.0;
  double rate = 0.0;
  double tau_star = 0.0;  // p_hat / (z^2 + |q|^2) at the returned point
  std::string method;     // sdr-rank1 | sdr-randomized | closed-form-k1 | fixed-q
  PlacementDiagnostics diag;
};

/// Joint placement and power via bisection over lifted feasibility problems.
PlacementSolution solve_placement(const Scenario& s, const PlacementOptions& opts = {});

/// Closed form for a single PR. Throws UsageError when K != 1.
PlacementSolution solve_single_pr(const Scenario& s);

/// Placement with power pinned at P (altitude free in [h_min, h_max]).
PlacementSolution solve_fixed_power_placement(const Scenario& s, const PlacementOptions& opts = {});

/// Evaluates a fixed horizontal location at z = h_min with the best power.
PlacementSolution evaluate_fixed_location(const Scenario& s, const Vec2& q);

struct GridSpec {
  double x_min = -600.0, x_max = 600.0;
  double y_min = -600.0, y_max = 600.0;
  double z_min = 170.0, z_max = 170.0;
  double step_xy = 5.0;
  double step_z = 5.0;
};

struct GridResult {
  Position3D pos;
  double p = 0.0;
  double rate = 0.0;
  std::size_t points = 0;
};

/// Exhaustive search with the per-point optimal power. Throws UsageError on an
/// empty grid.
GridResult grid_oracle(const Scenario& s, const GridSpec& g);

/// Rate slack for comparing a grid with step h against a continuous optimum
/// (alpha=2 and z=h_min: |dR/dq| <= alpha / (h_min ln 2)).
double grid_lipschitz_bound(const Scenario& s, double step);

}  // namespace cuav
