#pragma once

#include <cstddef>

#include "cuav/scenario.hpp"

namespace cuav {

/// LoS gain from the UAV to the SR: beta_u / (z^2 + |q|^2)^(alpha/2).
double channel_gain_sr(const Scenario& s, const Position3D& pos);

/// Worst-case interference power (W) received at PR k when the UAV
/// transmits with power p from pos.
double interference_at_pr(const Scenario& s, const Position3D& pos, double p, std::size_t k);

/// SR rate log2(1 + eta_u p / (z^2 + |q|^2)^(alpha/2)), bps/Hz.
double achievable_rate(const Scenario& s, const Position3D& pos, double p);

/// Largest power keeping PR k at or below the IT threshold.
double it_power_limit(const Scenario& s, const Position3D& pos, std::size_t k);

/// min(P, min_k it_power_limit): the rate-maximizing power at pos.
double optimal_power(const Scenario& s, const Position3D& pos);

/// Index of the PR closest to q horizontally; ties resolve to the lowest index.
std::size_t nearest_pr(const Scenario& s, const Vec2& q);

/// 10 log10(Gamma / max_k Q_k). Positive means slack; +inf when p == 0.
double worst_it_margin_db(const Scenario& s, const Position3D& pos, double p);

}  // namespace cuav
