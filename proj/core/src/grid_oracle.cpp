#include <cmath>

#include "cuav/channel.hpp"
#include "cuav/errors.hpp"
#include "cuav/placement.hpp"

namespace cuav {

namespace {

// Number of samples covering [lo, hi] with the given step, endpoints included.
long axis_count(double lo, double hi, double step, const char* name) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || hi < lo) {
    throw UsageError(std::string("grid oracle: empty range on ") + name);
  }
  if (hi == lo) return 1;
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw UsageError(std::string("grid oracle: step on ") + name + " must be positive");
  }
  return static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

GridResult grid_oracle(const Scenario& s, const GridSpec& g) {
  const long nx = axis_count(g.x_min, g.x_max, g.step_xy, "x");
  const long ny = axis_count(g.y_min, g.y_max, g.step_xy, "y");
  const long nz = axis_count(g.z_min, g.z_max, g.step_z, "z");
  if (g.z_min <= 0.0) throw UsageError("grid oracle: altitudes must be positive");

  GridResult best;
  best.rate = -1.0;
  for (long iz = 0; iz < nz; ++iz) {
    const double z = g.z_min + iz * g.step_z;
    for (long ix = 0; ix < nx; ++ix) {
      const double x = g.x_min + ix * g.step_xy;
      for (long iy = 0; iy < ny; ++iy) {
        const Position3D pos{Vec2(x, g.y_min + iy * g.step_xy), z};
        const double p = optimal_power(s, pos);
        const double r = achievable_rate(s, pos, p);
        if (r > best.rate) {
          best.rate = r;
          best.pos = pos;
          best.p = p;
        }
      }
    }
  }
  best.points = static_cast<std::size_t>(nx * ny * nz);
  return best;
}

double grid_lipschitz_bound(const Scenario& s, double step) {
  return s.alpha() / (s.h_min() * std::log(2.0)) * step * std::sqrt(2.0) / 2.0;
}

}  // namespace cuav
