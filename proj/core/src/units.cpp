#include "cuav/units.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cuav/errors.hpp"

namespace cuav {

namespace {

std::string infeasible_message(double requested_s, double t_min_s) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mission duration T = %.1f s is shorter than the minimum flight time T_min = %.1f s",
                requested_s, t_min_s);
  return buf;
}

}  // namespace

InfeasibleMission::InfeasibleMission(double requested_s, double t_min_s)
    : Error(infeasible_message(requested_s, t_min_s)), requested_(requested_s), t_min_(t_min_s) {}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace cuav
