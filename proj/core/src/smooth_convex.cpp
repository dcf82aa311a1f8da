#include "cuav/smooth_convex.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "cuav/barrier_terms.hpp"
#include "cuav/errors.hpp"

namespace cuav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Layout {
  int b;
  int iz;  // -1 when frozen
  int iz1;
  int iz2;
  explicit Layout(const SmoothConvexProgram& p)
      : b(p.block_size()), iz(p.freeze_z ? -1 : 2), iz1(p.block_size() - 2), iz2(p.block_size() - 1) {}
};

// Accumulates gradient / Hessian contributions expressed in block coordinates.
class Accum {
 public:
  Accum(Eigen::VectorXd* g, BlockTridiagonal* h, int b) : g_(g), h_(h), b_(b) {}
  bool active() const { return g_ != nullptr; }

  void grad(int slot, int idx, double v) {
    if (g_ && idx >= 0) (*g_)(slot * b_ + idx) += v;
  }
  void hess(int slot, int i, int j, double v) {
    if (h_ && i >= 0 && j >= 0) h_->diag(slot)(i, j) += v;
  }
  // Block (slot_hi, slot_hi - 1).
  void cross(int slot_hi, int i, int j, double v) {
    if (h_ && i >= 0 && j >= 0) h_->lower(slot_hi - 1)(i, j) += v;
  }

 private:
  Eigen::VectorXd* g_;
  BlockTridiagonal* h_;
  int b_;
};

// -log(s) for a slack that is linear in the block variables with coefficients c.
template <int M>
bool linear_log(double s, const std::array<int, M>& idx, const std::array<double, M>& c, int slot,
                double& value, Accum& acc) {
  if (!(s > 0.0)) return false;
  value -= std::log(s);
  if (!acc.active()) return true;
  for (int a = 0; a < M; ++a) {
    acc.grad(slot, idx[a], -c[a] / s);
    for (int b = 0; b < M; ++b) acc.hess(slot, idx[a], idx[b], c[a] * c[b] / (s * s));
  }
  return true;
}

}  // namespace

std::size_t SmoothConvexProgram::num_constraints() const {
  if (slots.empty()) return 0;
  std::size_t m = 0;
  for (const auto& s : slots) m += 3 + s.it.size() + (freeze_z ? 0 : 2);
  m += (slots.size() + 1) * (freeze_z ? 1 : 3);
  return m;
}

Eigen::VectorXd pack(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x) {
  const Layout l(prog);
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()) * l.b);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto o = static_cast<Eigen::Index>(i) * l.b;
    v(o) = x[i].q.x();
    v(o + 1) = x[i].q.y();
    if (l.iz >= 0) v(o + l.iz) = x[i].z;
    v(o + l.iz1) = x[i].zeta1;
    v(o + l.iz2) = x[i].zeta2;
  }
  return v;
}

std::vector<SlotPoint> unpack(const SmoothConvexProgram& prog, const Eigen::VectorXd& v,
                              const std::vector<SlotPoint>& frozen_from) {
  const Layout l(prog);
  std::vector<SlotPoint> x = frozen_from;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto o = static_cast<Eigen::Index>(i) * l.b;
    x[i].q = Eigen::Vector2d(v(o), v(o + 1));
    if (l.iz >= 0) x[i].z = v(o + l.iz);
    x[i].zeta1 = v(o + l.iz1);
    x[i].zeta2 = v(o + l.iz2);
  }
  return x;
}

double smooth_objective(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x) {
  double f = 0.0;
  terms::Eval2 e;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!terms::rate_surrogate(x[i].zeta1, x[i].zeta2, prog.rho, prog.slots[i].zeta2_ref, e)) {
      return -kInf;
    }
    f += e.value;
  }
  return f;
}

bool barrier_derivatives(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x, double t,
                         double& value, Eigen::VectorXd* grad, BlockTridiagonal* hess) {
  const Layout l(prog);
  const int n = static_cast<int>(x.size());
  if (grad) grad->setZero(static_cast<Eigen::Index>(n) * l.b);
  if (hess) hess->set_zero();
  Accum acc(grad, hess, l.b);
  value = 0.0;

  terms::Eval2 e2;
  terms::Eval4 e4;
  for (int i = 0; i < n; ++i) {
    const SlotPoint& p = x[i];
    const FreeSlot& fs = prog.slots[i];

    if (!terms::rate_surrogate(p.zeta1, p.zeta2, prog.rho, fs.zeta2_ref, e2)) return false;
    value -= t * e2.value;
    const int zi[2] = {l.iz1, l.iz2};
    for (int a = 0; a < 2; ++a) {
      acc.grad(i, zi[a], -t * e2.grad(a));
      for (int b = 0; b < 2; ++b) acc.hess(i, zi[a], zi[b], -t * e2.hess(a, b));
    }

    if (!linear_log<1>(p.zeta1, {l.iz1}, {1.0}, i, value, acc)) return false;
    if (!linear_log<1>(1.0 - p.zeta1, {l.iz1}, {-1.0}, i, value, acc)) return false;

    for (const LinearBound& lb : fs.it) {
      const double s = lb.coef.x() * p.q.x() + lb.coef.y() * p.q.y() + lb.coef.z() * p.z +
                       lb.offset - p.zeta1;
      if (!linear_log<4>(s, {0, 1, l.iz, l.iz1}, {lb.coef.x(), lb.coef.y(), lb.coef.z(), -1.0}, i,
                         value, acc)) {
        return false;
      }
    }

    if (!terms::power_composite_barrier(Eigen::Vector3d(p.q.x(), p.q.y(), p.z), p.zeta2, prog.alpha,
                                        e4)) {
      return false;
    }
    value += e4.value;
    const int ci[4] = {0, 1, l.iz, l.iz2};
    for (int a = 0; a < 4; ++a) {
      acc.grad(i, ci[a], e4.grad(a));
      for (int b = 0; b < 4; ++b) acc.hess(i, ci[a], ci[b], e4.hess(a, b));
    }

    if (l.iz >= 0) {
      if (!linear_log<1>(p.z - prog.z_lo, {l.iz}, {1.0}, i, value, acc)) return false;
      if (!linear_log<1>(prog.z_hi - p.z, {l.iz}, {-1.0}, i, value, acc)) return false;
    }
  }

  if (n == 0) return true;
  const double r2 = prog.step_h * prog.step_h;
  // Link j joins slot j-1 (or `first`) and slot j (or `last`).
  for (int j = 0; j <= n; ++j) {
    const SlotPoint& lo = j == 0 ? prog.first : x[j - 1];
    const SlotPoint& hi = j == n ? prog.last : x[j];
    const int ilo = j - 1;  // -1: fixed
    const int ihi = j == n ? -1 : j;

    if (!terms::ball_barrier(hi.q - lo.q, r2, e2)) return false;
    value += e2.value;
    for (int a = 0; a < 2; ++a) {
      if (ihi >= 0) acc.grad(ihi, a, e2.grad(a));
      if (ilo >= 0) acc.grad(ilo, a, -e2.grad(a));
      for (int b = 0; b < 2; ++b) {
        if (ihi >= 0) acc.hess(ihi, a, b, e2.hess(a, b));
        if (ilo >= 0) acc.hess(ilo, a, b, e2.hess(a, b));
        if (ihi >= 0 && ilo >= 0) acc.cross(ihi, a, b, -e2.hess(a, b));
      }
    }

    if (l.iz >= 0) {
      const double dz = hi.z - lo.z;
      const double su = prog.step_up - dz;
      const double sd = prog.step_down + dz;
      if (!(su > 0.0) || !(sd > 0.0)) return false;
      value -= std::log(su) + std::log(sd);
      const double g = 1.0 / su - 1.0 / sd;          // d/d(dz)
      const double h = 1.0 / (su * su) + 1.0 / (sd * sd);
      if (ihi >= 0) {
        acc.grad(ihi, l.iz, g);
        acc.hess(ihi, l.iz, l.iz, h);
      }
      if (ilo >= 0) {
        acc.grad(ilo, l.iz, -g);
        acc.hess(ilo, l.iz, l.iz, h);
      }
      if (ihi >= 0 && ilo >= 0) acc.cross(ihi, l.iz, l.iz, -h);
    }
  }
  return true;
}

bool strictly_feasible(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& x) {
  double v;
  return x.size() == prog.slots.size() && barrier_derivatives(prog, x, 0.0, v, nullptr, nullptr) &&
         std::isfinite(v);
}

BarrierResult solve_smooth_convex(const SmoothConvexProgram& prog, const std::vector<SlotPoint>& start,
                                  const BarrierOptions& opts) {
  if (start.size() != prog.slots.size()) {
    throw InvalidArgument("smooth convex: start has " + std::to_string(start.size()) +
                          " slots, program has " + std::to_string(prog.slots.size()));
  }
  BarrierResult res;
  res.x = start;
  if (start.empty()) return res;
  if (!strictly_feasible(prog, start)) {
    throw SolverError(
        "smooth convex: start point is not strictly feasible; shrink the step toward the "
        "interior or reinitialize");
  }

  const Layout l(prog);
  const int n = static_cast<int>(start.size());
  const double m = static_cast<double>(prog.num_constraints());
  const double f_start = smooth_objective(prog, start);

  Eigen::VectorXd v = pack(prog, start);
  std::vector<SlotPoint> x = start;
  BlockTridiagonal h(n, l.b);
  Eigen::VectorXd g, dx;

  double t = opts.t0;
  bool done = false;
  for (int stage = 0; stage < opts.max_stages && !done; ++stage, t *= opts.t_factor) {
    res.stages = stage + 1;
    for (int it = 0; it < opts.max_newton; ++it) {
      double f0;
      barrier_derivatives(prog, x, t, f0, &g, &h);
      bool ok;
      if (opts.solver == LinearSolver::Banded) {
        ok = h.solve(-g, dx);
      } else {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h.to_dense());
        dx = ldlt.solve(-g);
        ok = ldlt.info() == Eigen::Success && dx.allFinite();
      }
      if (!ok) {
        res.degraded = true;
        break;
      }
      const double dec2 = -g.dot(dx);
      res.decrement = 0.5 * dec2;
      if (!(dec2 > 2e-12)) break;

      double step = 1.0;
      std::vector<SlotPoint> xn;
      bool accepted = false;
      while (step > 1e-16) {
        xn = unpack(prog, v + step * dx, x);
        double f1;
        if (barrier_derivatives(prog, xn, t, f1, nullptr, nullptr) && std::isfinite(f1) &&
            f1 <= f0 - 0.01 * step * dec2) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        res.degraded = res.decrement > 1e-6;
        break;
      }
      v += step * dx;
      x = std::move(xn);
      ++res.newton_steps;
    }
    const double f = smooth_objective(prog, x);
    res.duality_gap = m / t;
    if (res.duality_gap <= opts.tol * (1.0 + std::abs(f))) done = true;
  }
  if (!done) res.degraded = true;

  res.objective = smooth_objective(prog, x);
  res.x = std::move(x);
  if (res.objective < f_start) {
    res.x = start;
    res.objective = f_start;
  }
  return res;
}

}  // namespace cuav
