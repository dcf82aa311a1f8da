#pragma once

// Decibel conversions. Everything inside the library is linear SI; these
// helpers are only used at configuration and reporting boundaries.

namespace cuav {

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace cuav
