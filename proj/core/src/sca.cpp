#include <algorithm>
#include <cmath>

#include "cuav/errors.hpp"
#include "cuav/trajectory.hpp"

namespace cuav {

namespace {

// Length unit h_min; power unit P; zeta2 unit h_min^alpha.
struct Units {
  double len;
  double len_a;
  double rho;      // eta_u P / len^alpha
  double gamma_n;  // Gamma len^alpha / (beta0 P)
};

Units units_of(const Scenario& s) {
  Units u;
  u.len = s.h_min();
  u.len_a = std::pow(u.len, s.alpha());
  u.rho = s.eta_u() * s.p_max() / u.len_a;
  u.gamma_n = s.gamma_it() * u.len_a / (s.beta_0() * s.p_max());
  return u;
}

// Strictly interior reference: straight line at constant velocity plus an
// altitude bump that stays inside every vertical-speed and altitude limit.
void reference_path(const Scenario& s, const MissionProfile& m, std::size_t n, bool freeze,
                    const std::vector<double>& z_init, std::vector<Vec2>& q, std::vector<double>& z) {
  q.resize(n);
  z.resize(n);
  const double dt = m.duration_t / static_cast<double>(n - 1);
  const double dz_lin = (m.z_final - m.z_initial) / static_cast<double>(n - 1);
  const double slack_up = m.v_a * dt - dz_lin;
  const double slack_dn = m.v_d * dt + dz_lin;
  const double slope = 0.5 * std::max(0.0, std::min(slack_up, slack_dn));
  const double top = std::max(m.z_initial, m.z_final);
  const double bottom = std::min(m.z_initial, m.z_final);
  double cap, sign;
  if (top < s.h_max()) {
    cap = 0.5 * (s.h_max() - top);
    sign = 1.0;
  } else {
    cap = 0.5 * (bottom - s.h_min());
    sign = -1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    q[i] = m.q_initial + f * (m.q_final - m.q_initial);
    if (freeze) {
      z[i] = z_init[i];
    } else {
      const double steps = static_cast<double>(std::min(i, n - 1 - i));
      z[i] = m.z_initial + f * (m.z_final - m.z_initial) + sign * std::min(cap, slope * steps);
    }
  }
  q.back() = m.q_final;
  z.back() = freeze ? z_init.back() : m.z_final;
}

struct Subproblem {
  SmoothConvexProgram prog;
  std::vector<SlotPoint> start;
};

Subproblem build(const Scenario& s, const MissionProfile& m, const Units& u, bool freeze,
                 double margin, const std::vector<Vec2>& q, const std::vector<double>& z) {
  const std::size_t n = q.size();
  const double dt = m.duration_t / static_cast<double>(n - 1);
  Subproblem sp;
  SmoothConvexProgram& p = sp.prog;
  p.rho = u.rho;
  p.alpha = s.alpha();
  p.z_lo = 1.0;
  p.z_hi = s.h_max() / u.len;
  p.step_h = m.v_h * dt / u.len;
  p.step_up = m.v_a * dt / u.len;
  p.step_down = m.v_d * dt / u.len;
  p.freeze_z = freeze;
  p.first = {q.front() / u.len, z.front() / u.len, 0.0, 1.0};
  p.last = {q.back() / u.len, z.back() / u.len, 0.0, 1.0};

  const double a = s.alpha();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 q0 = q[i] / u.len;
    const double z0 = z[i] / u.len;
    FreeSlot fs;
    double limit = 1.0;
    for (const Vec2& w : s.pr_locations()) {
      const Vec2 d = q0 - w / u.len;
      const double d0 = d.squaredNorm() + z0 * z0;
      const double f0 = std::pow(d0, 0.5 * a);
      const double g0 = std::pow(d0, 0.5 * a - 1.0);
      LinearBound lb;
      lb.coef = u.gamma_n * a * g0 * Eigen::Vector3d(d.x(), d.y(), z0);
      lb.offset = u.gamma_n * (f0 - a * g0 * (d.dot(q0) + z0 * z0));
      fs.it.push_back(lb);
      limit = std::min(limit, u.gamma_n * f0);
    }
    const double phi = std::pow(q0.squaredNorm() + z0 * z0, 0.5 * a);
    fs.zeta2_ref = phi;
    p.slots.push_back(fs);
    sp.start.push_back({q0, z0, (1.0 - margin) * limit, (1.0 + margin) * phi});
  }
  return sp;
}

// Endpoint rates are constants of the subproblem.
double surrogate_average(const Trajectory& init, const BarrierResult& r) {
  const double sum = r.objective + init.rate.front() + init.rate.back();
  return sum / static_cast<double>(init.n_slots());
}

}  // namespace

ScaResult sca_optimize(const Scenario& s, const MissionProfile& m, const Trajectory& init,
                       const ScaOptions& opts) {
  m.validate(s);
  const std::size_t n = init.n_slots();
  if (n < 2 || init.z.size() != n) throw InvalidArgument("SCA needs a trajectory with >= 2 slots");

  ScaResult res;
  res.traj = init;
  ScaState& st = res.state;
  st.q = init.q;
  st.z = init.z;
  st.history.push_back(init.avg_rate);

  if (n == 2) {
    st.converged = true;
    return res;
  }
  if (s.gamma_it() == 0.0) {
    st.converged = true;
    st.warnings.push_back("gamma = 0: every slot is silent, nothing to optimize");
    return res;
  }
  bool freeze = opts.freeze_z;
  if (!freeze && !(s.h_max() > s.h_min())) {
    freeze = true;
    st.warnings.push_back("h_min == h_max: altitude frozen");
  }

  const Units u = units_of(s);
  std::vector<Vec2> ref_q;
  std::vector<double> ref_z;
  reference_path(s, m, n, freeze, init.z, ref_q, ref_z);

  // Pull the (boundary-touching) initial path slightly toward the reference so
  // the barrier method has a strictly feasible start.
  std::vector<Vec2> cur_q(n);
  std::vector<double> cur_z(n);
  Subproblem sp;
  bool interior = false;
  for (double theta : {opts.interior_pull, 1e-2, 1e-1, 0.5}) {
    if (theta < opts.interior_pull) continue;
    for (std::size_t i = 0; i < n; ++i) {
      cur_q[i] = (1.0 - theta) * init.q[i] + theta * ref_q[i];
      cur_z[i] = freeze ? init.z[i] : (1.0 - theta) * init.z[i] + theta * ref_z[i];
    }
    cur_q.front() = init.q.front();
    cur_q.back() = init.q.back();
    cur_z.front() = init.z.front();
    cur_z.back() = init.z.back();
    sp = build(s, m, u, freeze, opts.zeta_margin, cur_q, cur_z);
    if (strictly_feasible(sp.prog, sp.start)) {
      interior = true;
      break;
    }
  }
  if (!interior) {
    st.converged = true;
    st.warnings.push_back("no strictly feasible interior (T at T_min?); returning the initial trajectory");
    return res;
  }

  double best = init.avg_rate;
  for (int j = 1; j <= opts.max_iters; ++j) {
    BarrierResult br;
    try {
      br = solve_smooth_convex(sp.prog, sp.start, opts.barrier);
    } catch (const SolverError& e) {
      st.degraded = true;
      st.warnings.push_back(std::string("subproblem failed: ") + e.what());
      break;
    }
    st.iterations = j;
    st.newton_steps += br.newton_steps;
    if (br.degraded) st.degraded = true;

    std::vector<Vec2> nq = cur_q;
    std::vector<double> nz = cur_z;
    for (std::size_t i = 0; i < br.x.size(); ++i) {
      nq[i + 1] = br.x[i].q * u.len;
      nz[i + 1] = br.x[i].z * u.len;
    }
    Trajectory cand = make_trajectory(s, m.duration_t, nq, nz);
    st.violation.push_back(check_trajectory(s, m, cand).worst());
    st.surrogate.push_back(surrogate_average(init, br));
    if (opts.keep_iterates) st.iterates.push_back(cand);

    if (cand.avg_rate < best) {
      // Numerical noise at a stationary point; keep the incumbent.
      st.converged = true;
      break;
    }
    const double gain = cand.avg_rate - best;
    best = cand.avg_rate;
    st.history.push_back(best);
    res.traj = std::move(cand);
    st.q = nq;
    st.z = nz;
    st.zeta1.resize(br.x.size());
    st.zeta2.resize(br.x.size());
    for (std::size_t i = 0; i < br.x.size(); ++i) {
      st.zeta1[i] = br.x[i].zeta1 * s.p_max();
      st.zeta2[i] = br.x[i].zeta2 * u.len_a;
    }
    if (gain < opts.eps_sca) {
      st.converged = true;
      break;
    }
    cur_q = std::move(nq);
    cur_z = std::move(nz);
    sp = build(s, m, u, freeze, opts.zeta_margin, cur_q, cur_z);
    if (!strictly_feasible(sp.prog, sp.start)) {
      st.degraded = true;
      st.warnings.push_back("subproblem start lost strict feasibility; stopping");
      break;
    }
  }
  return res;
}

}  // namespace cuav
