#include "cuav/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cuav/errors.hpp"

namespace cuav {

namespace {

void check_position(const Position3D& pos) {
  if (!pos.q.allFinite() || !std::isfinite(pos.z)) {
    throw DomainError("non-finite UAV position");
  }
}

void check_power(double p) {
  if (!std::isfinite(p) || p < 0.0) throw DomainError("transmit power must be finite and >= 0");
}

// d^alpha for squared distance d2; exact multiply for the alpha = 2 case.
double path_loss(double d2, double alpha) {
  return alpha == 2.0 ? d2 : std::pow(d2, 0.5 * alpha);
}

double sq_dist_pr(const Scenario& s, const Position3D& pos, std::size_t k) {
  return pos.z * pos.z + (pos.q - s.pr(k)).squaredNorm();
}

}  // namespace

double channel_gain_sr(const Scenario& s, const Position3D& pos) {
  check_position(pos);
  if (!(pos.z > 0.0)) throw DomainError("UAV altitude must be positive");
  return s.beta_u() / path_loss(pos.z * pos.z + pos.q.squaredNorm(), s.alpha());
}

double interference_at_pr(const Scenario& s, const Position3D& pos, double p, std::size_t k) {
  check_position(pos);
  check_power(p);
  const double d2 = sq_dist_pr(s, pos, k);
  if (p == 0.0) return 0.0;
  return s.beta_0() * p / path_loss(d2, s.alpha());
}

double achievable_rate(const Scenario& s, const Position3D& pos, double p) {
  check_power(p);
  return std::log2(1.0 + p * channel_gain_sr(s, pos) / s.sigma2());
}

double it_power_limit(const Scenario& s, const Position3D& pos, std::size_t k) {
  check_position(pos);
  return s.gamma_it() / s.beta_0() * path_loss(sq_dist_pr(s, pos, k), s.alpha());
}

double optimal_power(const Scenario& s, const Position3D& pos) {
  double p = s.p_max();
  for (std::size_t k = 0; k < s.num_prs(); ++k) p = std::min(p, it_power_limit(s, pos, k));
  return p;
}

std::size_t nearest_pr(const Scenario& s, const Vec2& q) {
  if (!q.allFinite()) throw DomainError("non-finite horizontal position");
  std::size_t best = 0;
  double best_d = (q - s.pr(0)).squaredNorm();
  for (std::size_t k = 1; k < s.num_prs(); ++k) {
    const double d = (q - s.pr(k)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

double worst_it_margin_db(const Scenario& s, const Position3D& pos, double p) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.num_prs(); ++k) {
    worst = std::max(worst, interference_at_pr(s, pos, p, k));
  }
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(s.gamma_it() / worst);
}

}  // namespace cuav
