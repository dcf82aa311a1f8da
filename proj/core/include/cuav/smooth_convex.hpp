#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "cuav/block_tridiagonal.hpp"

namespace cuav {

/// One trajectory slot of the subproblem, in normalized units.
struct SlotPoint {
  Eigen::Vector2d q = Eigen::Vector2d::Zero();
  double z = 1.0;
  double zeta1 = 0.0;
  double zeta2 = 1.0;
};

/// zeta1 <= coef . (qx, qy, z) + offset
struct LinearBound {
  Eigen::Vector3d coef = Eigen::Vector3d::Zero();
  double offset = 0.0;
};

struct FreeSlot {
  std::vector<LinearBound> it;  // linearized interference constraints
  double zeta2_ref = 1.0;       // expansion point of the rate surrogate
};

/// Concave maximization over the free slots 2..N-1 of a trajectory:
///
///   max  sum_n log2(zeta2 + rho zeta1) - log2(ref) - (zeta2/ref - 1) log2(e)
///   s.t. 0 < zeta1 < 1,  zeta1 <= linear IT bounds,
///        (|q|^2 + z^2)^(alpha/2) <= zeta2,  z_lo <= z <= z_hi,
///        |q[n] - q[n-1]|^2 <= step_h^2,  -step_down <= z[n] - z[n-1] <= step_up,
///
/// where slots 1 and N are the fixed `first` and `last` points. With freeze_z
/// the altitude of every free slot stays at its start value and the vertical
/// constraints are dropped.
struct SmoothConvexProgram {
  double rho = 1.0;
  double alpha = 2.0;
  double z_lo = 1.0;
  double z_hi = 2.0;
  double step_h = 1.0;
  double step_up = 1.0;
  double step_down = 1.0;
  bool freeze_z = false;
  SlotPoint first;
  SlotPoint last;
  std::vector<FreeSlot> slots;

  int block_size() const { return freeze_z ? 4 : 5; }
  /// Barrier degree: total number of scalar inequality constraints.
  std::size_t num_constraints() const;
};

enum class LinearSolver { Banded, Dense };

struct BarrierOptions {
  double tol = 1e-7;  // stop when m / t <= tol (1 + |objective|)
  int max_newton = 200;
  int max_stages = 12;
  double t0 = 1.0;
  double t_factor = 10.0;
  LinearSolver solver = LinearSolver::Banded;
};

struct BarrierResult {
  std::vector<SlotPoint> x;
  double objective = 0.0;
  int newton_steps = 0;
  int stages = 0;
  double duality_gap = 0.0;  // m / t at exit
  double decrement = 0.0;    // last Newton decrement^2 / 2
  bool degraded = false;     // line search stalled or stage cap hit before tol
};

/// Surrogate objective (bits, summed over free slots). Returns -inf outside
/// the objective domain.
double smooth_objective(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x);

/// True when every inequality holds strictly at x.
bool strictly_feasible(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x);

/// Barrier value F = -t * objective + barrier(x) and its derivatives over the
/// packed free variables. Returns false when x is outside the domain.
bool barrier_derivatives(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x, double t,
                         double& value, Eigen::VectorXd* grad, BlockTridiagonal* hess);

/// Barrier-Newton maximization from a strictly feasible start. Throws
/// SolverError if the start is not strictly feasible.
BarrierResult solve_smooth_convex(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& start,
                                  const BarrierOptions& opts = {});

Eigen::VectorXd pack(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x);
std::vector<SlotPoint> unpack(const SmoothConvexProgram& prog, const Eigen::VectorXd& v,
                              const std::vector<SlotPoint>& frozen_from);

}  // namespace cuav
