#pragma once

#include <string>

#include "cuav/placement.hpp"
#include "cuav/scenario.hpp"
#include "cuav/trajectory.hpp"

namespace cuav {

/// JSON record: position, power (W and dBm), rate, method, tau, per-PR
/// margins and solver diagnostics. `trace` adds the bisection steps.
std::string placement_to_json(const Scenario& s, const PlacementSolution& sol, bool trace = false);

/// One row per slot:
/// n,t_s,x_m,y_m,z_m,p_dbm,rate_bpshz,worst_it_margin_db,nearest_pr
std::string trajectory_to_csv(const Trajectory& t);

/// Slots plus the SCA state (objective history, flags, warnings).
std::string plan_to_json(const Scenario& s, const PlanResult& r);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

/// Shortest round-trip formatting, with inf/-inf/nan spelled out.
std::string format_number(double v);

}  // namespace cuav
