#include "cuav/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuav/channel.hpp"
#include "cuav/errors.hpp"

namespace cuav {

namespace {

double vertical_time(double from, double to, const MissionProfile& m) {
  return to >= from ? (to - from) / m.v_a : (from - to) / m.v_d;
}

void require_feasible_duration(const MissionProfile& m) {
  const double t_min = min_duration(m);
  if (m.duration_t < t_min * (1.0 - 1e-12)) throw InfeasibleMission(m.duration_t, t_min);
}

}  // namespace

double min_duration(const MissionProfile& m) {
  return std::max((m.q_final - m.q_initial).norm() / m.v_h, vertical_time(m.z_initial, m.z_final, m));
}

std::size_t slot_count(const MissionProfile& m) {
  if (m.n_slots >= 2) return m.n_slots;
  return static_cast<std::size_t>(std::ceil(m.duration_t - 1e-9)) + 1;
}

std::vector<double> optimal_power_profile(const Scenario& s, const std::vector<Vec2>& q,
                                          const std::vector<double>& z) {
  if (q.size() != z.size()) throw InvalidArgument("power profile: q and z lengths differ");
  std::vector<double> p(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) p[n] = optimal_power(s, {q[n], z[n]});
  return p;
}

Trajectory make_trajectory(const Scenario& s, double duration_t, std::vector<Vec2> q,
                           std::vector<double> z) {
  if (q.size() != z.size() || q.size() < 2) throw InvalidArgument("trajectory needs >= 2 slots");
  Trajectory t;
  t.duration_t = duration_t;
  t.delta_t = duration_t / static_cast<double>(q.size() - 1);
  t.p = optimal_power_profile(s, q, z);
  t.q = std::move(q);
  t.z = std::move(z);
  const std::size_t n = t.q.size();
  t.rate.resize(n);
  t.it_margin_db.resize(n);
  t.nearest_pr.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Position3D pos = t.pos(i);
    t.rate[i] = achievable_rate(s, pos, t.p[i]);
    t.it_margin_db[i] = worst_it_margin_db(s, pos, t.p[i]);
    t.nearest_pr[i] = nearest_pr(s, t.q[i]);
    sum += t.rate[i];
  }
  t.avg_rate = sum / static_cast<double>(n);
  return t;
}

double it_linearization(const Scenario& s, const Position3D& at, const Position3D& x, std::size_t k) {
  const Vec2 a = at.q - s.pr(k);
  const double d0 = a.squaredNorm() + at.z * at.z;
  const double f0 = std::pow(d0, 0.5 * s.alpha());
  const double g0 = std::pow(d0, 0.5 * s.alpha() - 1.0);
  const double lin = f0 + s.alpha() * g0 * (a.dot(x.q - at.q) + at.z * (x.z - at.z));
  return s.gamma_it() / s.beta_0() * lin;
}

double FeasibilityReport::worst() const {
  return std::max({horizontal, vertical, altitude, endpoints, interference});
}

FeasibilityReport check_trajectory(const Scenario& s, const MissionProfile& m, const Trajectory& t) {
  FeasibilityReport r;
  const std::size_t n = t.n_slots();
  if (n < 2) return r;
  const double dt = m.duration_t / static_cast<double>(n - 1);
  const double vh = m.v_h * dt, va = m.v_a * dt, vd = m.v_d * dt;
  for (std::size_t i = 1; i < n; ++i) {
    r.horizontal = std::max(r.horizontal, (t.q[i] - t.q[i - 1]).norm() / vh - 1.0);
    const double dz = t.z[i] - t.z[i - 1];
    r.vertical = std::max({r.vertical, (dz - va) / va, (-dz - vd) / vd});
  }
  for (std::size_t i = 0; i < n; ++i) {
    r.altitude = std::max({r.altitude, (s.h_min() - t.z[i]) / s.h_min(),
                           (t.z[i] - s.h_max()) / s.h_max()});
    const Position3D pos = t.pos(i);
    for (std::size_t k = 0; k < s.num_prs(); ++k) {
      const double q = interference_at_pr(s, pos, t.p[i], k);
      if (s.gamma_it() > 0.0) {
        r.interference = std::max(r.interference, q / s.gamma_it() - 1.0);
      } else if (q > 0.0) {
        r.interference = std::numeric_limits<double>::infinity();
      }
    }
  }
  const double scale = 1.0 + m.q_initial.norm() + m.q_final.norm();
  r.endpoints = std::max({(t.q.front() - m.q_initial).norm() / scale,
                          (t.q.back() - m.q_final).norm() / scale,
                          std::abs(t.z.front() - m.z_initial) / s.h_min(),
                          std::abs(t.z.back() - m.z_final) / s.h_min()});
  r.horizontal = std::max(0.0, r.horizontal);
  r.vertical = std::max(0.0, r.vertical);
  r.altitude = std::max(0.0, r.altitude);
  return r;
}

Trajectory straight_trajectory(const Scenario& s, const MissionProfile& m) {
  m.validate(s);
  require_feasible_duration(m);
  const std::size_t n = slot_count(m);
  std::vector<Vec2> q(n);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    q[i] = m.q_initial + f * (m.q_final - m.q_initial);
    z[i] = m.z_initial + f * (m.z_final - m.z_initial);
  }
  q.back() = m.q_final;
  z.back() = m.z_final;
  return make_trajectory(s, m.duration_t, std::move(q), std::move(z));
}

Trajectory initial_trajectory(const Scenario& s, const MissionProfile& m, const PlacementSolution& place,
                              InitInfo* info) {
  m.validate(s);
  require_feasible_duration(m);
  const Vec2 qs = place.pos.q;
  const double zs = place.pos.z;
  const double t1 = std::max(vertical_time(m.z_initial, zs, m), (qs - m.q_initial).norm() / m.v_h);
  const double t2 = std::max(vertical_time(zs, m.z_final, m), (m.q_final - qs).norm() / m.v_h);
  const double t_fly = t1 + t2;
  const double big_t = m.duration_t;

  InitInfo local;
  local.t_fly = t_fly;
  local.hover_q = qs;
  if (big_t < t_fly) {
    local.kind = InitKind::Straight;
    if (info) *info = local;
    return straight_trajectory(s, m);
  }
  local.kind = InitKind::FlyHoverFly;
  local.hover_s = big_t - t_fly;

  const std::size_t n = slot_count(m);
  const double dt = big_t / static_cast<double>(n - 1);
  std::vector<Vec2> q(n);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (t1 > 0.0 && t < t1) {
      const double f = t / t1;
      q[i] = m.q_initial + f * (qs - m.q_initial);
      z[i] = m.z_initial + f * (zs - m.z_initial);
    } else if (t <= big_t - t2 || t2 <= 0.0) {
      q[i] = qs;
      z[i] = zs;
      if (t > t1 && t < big_t - t2) ++local.hover_slots;
    } else {
      const double f = std::min(1.0, (t - (big_t - t2)) / t2);
      q[i] = qs + f * (m.q_final - qs);
      z[i] = zs + f * (m.z_final - zs);
    }
  }
  q.front() = m.q_initial;
  z.front() = m.z_initial;
  q.back() = m.q_final;
  z.back() = m.z_final;
  if (info) *info = local;
  return make_trajectory(s, big_t, std::move(q), std::move(z));
}

PlanResult plan(const Scenario& s, const MissionProfile& m, const PlanOptions& opts) {
  m.validate(s);
  PlanResult out;
  out.t_min = min_duration(m);
  require_feasible_duration(m);
  out.placement = solve_placement(s, opts.placement);
  out.init = initial_trajectory(s, m, out.placement, &out.init_info);

  ScaOptions sca = opts.sca;
  if (!opts.fixed_altitude && !opts.warm_start_2d) {
    sca.freeze_z = false;
    ScaResult r = sca_optimize(s, m, out.init, sca);
    out.traj = std::move(r.traj);
    out.state = std::move(r.state);
    return out;
  }

  // The 2D path hovers at h_min; only the endpoint legs change altitude.
  PlacementSolution flat_place = out.placement;
  flat_place.pos.z = s.h_min();
  ScaOptions flat = sca;
  flat.freeze_z = true;
  Trajectory flat_init = initial_trajectory(s, m, flat_place);
  ScaResult r2 = sca_optimize(s, m, flat_init, flat);
  if (opts.fixed_altitude) {
    out.init = std::move(flat_init);
    out.traj = std::move(r2.traj);
    out.state = std::move(r2.state);
    return out;
  }

  sca.freeze_z = false;
  ScaResult from_init = sca_optimize(s, m, out.init, sca);
  ScaResult from_2d = sca_optimize(s, m, r2.traj, sca);
  out.state_2d = std::move(r2.state);
  ScaResult& best = from_2d.traj.avg_rate > from_init.traj.avg_rate ? from_2d : from_init;
  if (&best == &from_2d) out.warm_started = true;
  out.traj = std::move(best.traj);
  out.state = std::move(best.state);
  return out;
}

}  // namespace cuav
