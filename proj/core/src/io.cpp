#include "cuav/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cuav/errors.hpp"
#include "cuav/units.hpp"

namespace cuav {

namespace {

using nlohmann::ordered_json;

// JSON has no infinities; those become strings.
ordered_json num(double v) {
  if (v == 0.0) return 0.0;
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double dbm(double watts) { return watts > 0.0 ? watts_to_dbm(watts) : -INFINITY; }

ordered_json sol_json(const Scenario& s, const PlacementSolution& sol, bool trace) {
  ordered_json j;
  j["position"] = {{"x_m", num(sol.pos.q.x())}, {"y_m", num(sol.pos.q.y())}, {"z_m", sol.pos.z}};
  j["power_w"] = sol.p;
  j["power_dbm"] = num(dbm(sol.p));
  j["rate_bpshz"] = sol.rate;
  j["method"] = sol.method;
  j["tau_star"] = sol.tau_star;
  ordered_json margins = ordered_json::array();
  for (double m : sol.diag.it_margins_db) margins.push_back(num(m));
  j["it_margins_db"] = margins;
  ordered_json d;
  d["bisection_iters"] = sol.diag.bisection_iters;
  d["newton_steps"] = sol.diag.newton_steps;
  d["rank_ratio"] = sol.diag.rank_ratio;
  d["tau_upper"] = sol.diag.tau_upper;
  d["warnings"] = sol.diag.warnings;
  if (trace) {
    ordered_json steps = ordered_json::array();
    for (const auto& b : sol.diag.trace) {
      steps.push_back({{"tau", b.tau},
                       {"status", to_string(b.status)},
                       {"slack", b.slack},
                       {"newton_steps", b.newton_steps}});
    }
    d["trace"] = steps;
  }
  j["diagnostics"] = d;
  (void)s;
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (v == 0.0) return "0";
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string placement_to_json(const Scenario& s, const PlacementSolution& sol, bool trace) {
  return sol_json(s, sol, trace).dump(2) + "\n";
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::ostringstream os;
  os << "n,t_s,x_m,y_m,z_m,p_dbm,rate_bpshz,worst_it_margin_db,nearest_pr\n";
  for (std::size_t i = 0; i < t.n_slots(); ++i) {
    os << (i + 1) << ',' << format_number(static_cast<double>(i) * t.delta_t) << ','
       << format_number(t.q[i].x()) << ',' << format_number(t.q[i].y()) << ','
       << format_number(t.z[i]) << ',' << format_number(dbm(t.p[i])) << ','
       << format_number(t.rate[i]) << ',' << format_number(t.it_margin_db[i]) << ','
       << (t.nearest_pr[i] + 1) << '\n';
  }
  return os.str();
}

std::string plan_to_json(const Scenario& s, const PlanResult& r) {
  ordered_json j;
  const Trajectory& t = r.traj;
  j["avg_rate_bpshz"] = t.avg_rate;
  j["initial_avg_rate_bpshz"] = r.init.avg_rate;
  j["duration_s"] = t.duration_t;
  j["n_slots"] = t.n_slots();
  j["delta_t_s"] = t.delta_t;
  j["t_min_s"] = r.t_min;
  j["initial_trajectory"] = {
      {"kind", r.init_info.kind == InitKind::FlyHoverFly ? "fly-hover-fly" : "straight"},
      {"t_fly_s", r.init_info.t_fly},
      {"hover_s", r.init_info.hover_s},
      {"hover_point", {r.init_info.hover_q.x(), r.init_info.hover_q.y()}}};
  j["placement"] = sol_json(s, r.placement, false);

  auto state_json = [](const ScaState& st) {
    ordered_json o;
    o["iterations"] = st.iterations;
    o["converged"] = st.converged;
    o["degraded"] = st.degraded;
    o["newton_steps"] = st.newton_steps;
    o["history"] = st.history;
    o["surrogate"] = st.surrogate;
    o["violation"] = st.violation;
    o["warnings"] = st.warnings;
    return o;
  };
  j["sca"] = state_json(r.state);
  if (r.state_2d) j["sca_2d_warm_start"] = state_json(*r.state_2d);

  ordered_json slots = ordered_json::array();
  for (std::size_t i = 0; i < t.n_slots(); ++i) {
    slots.push_back({{"n", i + 1},
                     {"t_s", static_cast<double>(i) * t.delta_t},
                     {"x_m", num(t.q[i].x())},
                     {"y_m", num(t.q[i].y())},
                     {"z_m", t.z[i]},
                     {"p_w", t.p[i]},
                     {"p_dbm", num(dbm(t.p[i]))},
                     {"rate_bpshz", t.rate[i]},
                     {"worst_it_margin_db", num(t.it_margin_db[i])},
                     {"nearest_pr", t.nearest_pr[i] + 1}});
  }
  j["slots"] = slots;
  return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

}  // namespace cuav
