#include "cuav/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Eigenvalues>

#include "cuav/channel.hpp"
#include "cuav/errors.hpp"
#include "rng.hpp"

namespace cuav {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Transformed-domain constants: c = gamma_hat / beta0_hat, P_hat.
struct Hat {
  double c;
  double p_hat;
  double expo;  // 2 / alpha
};

Hat hat_of(const Scenario& s) {
  const double e = 2.0 / s.alpha();
  return {std::pow(s.gamma_it(), e) / std::pow(s.beta_0(), e), std::pow(s.p_max(), e), e};
}

double min_pr_dist2(const Scenario& s, const Vec2& q) {
  double d2 = std::numeric_limits<double>::infinity();
  for (const Vec2& w : s.pr_locations()) d2 = std::min(d2, (q - w).squaredNorm());
  return d2;
}

double power_from_hat(const Scenario& s, double p_hat) {
  return std::min(s.p_max(), std::pow(p_hat, 0.5 * s.alpha()));
}

// Exact objective p_hat / (h^2 + |q|^2) at z = h_min with the best power.
double tau_free(const Scenario& s, const Hat& h, const Vec2& q) {
  if (!q.allFinite()) return kNegInf;
  const double h2 = s.h_min() * s.h_min();
  const double ph = std::min(h.p_hat, h.c * (h2 + min_pr_dist2(s, q)));
  return ph / (h2 + q.squaredNorm());
}

// Smallest feasible z^2 at full power, or nullopt when even h_max violates IT.
std::optional<double> fixed_power_alt_sq(const Scenario& s, const Hat& h, const Vec2& q) {
  const double need = h.p_hat / h.c - min_pr_dist2(s, q);
  const double lo = s.h_min() * s.h_min();
  const double hi = s.h_max() * s.h_max();
  const double z2 = std::max(lo, need);
  if (z2 > hi * (1.0 + 1e-12)) return std::nullopt;
  return std::min(z2, hi);
}

double tau_fixed(const Scenario& s, const Hat& h, const Vec2& q) {
  if (!q.allFinite()) return kNegInf;
  auto z2 = fixed_power_alt_sq(s, h, q);
  if (!z2) return kNegInf;
  return h.p_hat / (*z2 + q.squaredNorm());
}

void fill_margins(const Scenario& s, PlacementSolution& sol) {
  sol.diag.it_margins_db.clear();
  for (std::size_t k = 0; k < s.num_prs(); ++k) {
    const double q = interference_at_pr(s, sol.pos, sol.p, k);
    sol.diag.it_margins_db.push_back(q > 0.0 ? 10.0 * std::log10(s.gamma_it() / q)
                                             : std::numeric_limits<double>::infinity());
  }
}

PlacementSolution zero_power(const Scenario& s, const std::string& warning) {
  PlacementSolution sol;
  sol.pos = {Vec2::Zero(), s.h_min()};
  sol.p = 0.0;
  sol.rate = 0.0;
  sol.method = "fixed-q";
  sol.diag.warnings.push_back(warning);
  fill_margins(s, sol);
  return sol;
}

struct Candidate {
  Vec2 q;
  double tau;
  bool randomized;
};

// Shared bisection + extraction. `objective` evaluates the exact tau of a
// horizontal candidate (kNegInf if infeasible).
template <class Objective>
PlacementSolution run_sdr(const Scenario& s, const PlacementOptions& opts, bool fixed_power,
                          Objective objective) {
  const Hat h = hat_of(s);
  const double h2 = s.h_min() * s.h_min();
  const double kappa = 1.0 / h.c;

  SdpInstance inst;
  inst.pr_locations = s.pr_locations();
  inst.it_ratio = kappa;
  inst.p_hat_max = h.p_hat;
  inst.alt_sq_min = h2;
  inst.alt_sq_max = fixed_power ? s.h_max() * s.h_max() : h2;
  inst.fixed_power = fixed_power;

  SdpOptions sdp;
  sdp.eps_feas = opts.eps_feas;

  PlacementSolution sol;
  auto& diag = sol.diag;

  // Bisection in normalized units t' = kappa * tau (tau_max' = kappa P_hat / h^2).
  const double to_norm = kappa;
  double lo = 0.0;
  double hi = h.p_hat / h2 * to_norm;
  const double tau0 = objective(Vec2::Zero());
  if (std::isfinite(tau0)) lo = std::max(lo, tau0 * to_norm);

  std::optional<Eigen::Matrix3d> last_s;
  while (hi - lo > opts.eps_bis * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    inst.tau = mid / to_norm;
    sdp.stop_when_feasible = true;
    sdp.warm_start = last_s;
    const SdpOutcome out = solve_sdp_feasibility(inst, sdp);
    diag.trace.push_back({inst.tau, out.status, out.max_slack, out.newton_steps});
    diag.newton_steps += out.newton_steps;
    ++diag.bisection_iters;
    if (out.status == SdpStatus::Feasible) {
      lo = mid;
      last_s = out.s_mat;
    } else {
      if (out.status == SdpStatus::Indeterminate) {
        diag.warnings.push_back("SDP numerically indeterminate at tau = " +
                                std::to_string(inst.tau) + "; treated as infeasible");
      }
      hi = mid;
    }
  }
  diag.tau_upper = hi / to_norm;

  // Full solve at the last feasible level to land near the optimal face.
  inst.tau = lo / to_norm;
  sdp.stop_when_feasible = false;
  sdp.warm_start = last_s;
  const SdpOutcome fin = solve_sdp_feasibility(inst, sdp);
  diag.newton_steps += fin.newton_steps;
  if (fin.status != SdpStatus::Feasible) {
    diag.warnings.push_back(std::string("final SDP solve reported ") + to_string(fin.status));
  }

  Eigen::Matrix3d sm = 0.5 * (fin.s_mat + fin.s_mat.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> evd(sm);
  const Eigen::Vector3d lam = evd.eigenvalues();
  const Eigen::Vector3d v = evd.eigenvectors().col(2);
  diag.rank_ratio = lam(2) > 0.0 ? std::max(0.0, lam(1)) / lam(2) : 1.0;

  std::vector<Candidate> cands;
  auto consider = [&](const Vec2& q, bool rnd) {
    const double t = objective(q);
    if (t > kNegInf) cands.push_back({q, t, rnd});
  };
  if (std::abs(v(2)) > 1e-300) consider(Vec2(v(0) / v(2), v(1) / v(2)), false);
  consider(Vec2(sm(0, 2), sm(1, 2)), false);
  consider(Vec2::Zero(), false);

  if (diag.rank_ratio > opts.rank_tol) {
    detail::PortableRng rng(opts.seed);
    // S is PSD; clip tiny negative eigenvalues before taking the square root.
    const Eigen::Matrix3d root =
        evd.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    for (int i = 0; i < opts.samples; ++i) {
      Eigen::Vector3d g;
      for (int c = 0; c < 3; ++c) g(c) = rng.normal();
      const Eigen::Vector3d xi = root * g;
      if (std::abs(xi(2)) < 1e-12) continue;
      consider(Vec2(xi(0) / xi(2), xi(1) / xi(2)), true);
    }
  }

  if (cands.empty()) {
    // Only reachable with fixed power: slide the eigen-candidate radially
    // outward until the interference constraints can be met.
    Vec2 q = std::abs(v(2)) > 1e-300 ? Vec2(v(0) / v(2), v(1) / v(2)) : Vec2::Zero();
    Vec2 dir = q.norm() > 0.0 ? Vec2(q / q.norm()) : Vec2(-1.0, 0.0);
    double r_lo = q.norm();
    double r_hi = std::max(r_lo, s.h_min());
    bool found = false;
    for (int i = 0; i < 64 && !found; ++i) {
      r_hi *= 2.0;
      found = objective(dir * r_hi) > kNegInf;
    }
    if (found) {
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (r_lo + r_hi);
        (objective(dir * mid) > kNegInf ? r_hi : r_lo) = mid;
      }
      consider(dir * r_hi, false);
      diag.warnings.push_back("extracted location infeasible; moved radially outward");
    }
  }
  if (cands.empty()) return zero_power(s, "no feasible candidate location recovered");
  const auto best = std::max_element(cands.begin(), cands.end(),
                                     [](const Candidate& a, const Candidate& b) {
                                       return a.tau < b.tau;
                                     });
  sol.method = best->randomized ? "sdr-randomized" : "sdr-rank1";
  sol.pos.q = best->q;
  sol.tau_star = best->tau;
  return sol;
}

}  // namespace

HorizontalOptimum solve_given_horizontal(const Scenario& s, const Vec2& q) {
  if (!q.allFinite()) throw DomainError("non-finite horizontal position");
  const Hat h = hat_of(s);
  HorizontalOptimum out;
  out.nearest = nearest_pr(s, q);
  const double d = (q - s.pr(out.nearest)).norm();
  const double r = q.norm();
  const double d2 = d * d;
  if (std::abs(d - r) <= 1e-12 * (1.0 + r)) {
    out.case_tag = 3;
    out.z = s.h_min();
  } else if (d < r) {
    out.case_tag = 1;
    const double arg = h.c > 0.0 ? h.p_hat / h.c - d2 : std::numeric_limits<double>::infinity();
    const double z_free = arg > 0.0 ? std::sqrt(arg) : 0.0;
    out.z = std::clamp(z_free, s.h_min(), s.h_max());
  } else {
    out.case_tag = 2;
    out.z = s.h_min();
  }
  out.p_hat = std::min(h.c * (out.z * out.z + d2), h.p_hat);
  return out;
}

PlacementSolution solve_placement(const Scenario& s, const PlacementOptions& opts) {
  if (s.gamma_it() == 0.0) return zero_power(s, "gamma = 0 forbids any transmission");
  const Hat h = hat_of(s);
  PlacementSolution sol = run_sdr(s, opts, false, [&](const Vec2& q) { return tau_free(s, h, q); });
  if (sol.method == "fixed-q") return sol;
  sol.pos.z = s.h_min();
  const double h2 = s.h_min() * s.h_min();
  const double p_hat = std::min(h.p_hat, h.c * (h2 + min_pr_dist2(s, sol.pos.q)));
  sol.p = power_from_hat(s, p_hat);
  sol.rate = achievable_rate(s, sol.pos, sol.p);
  fill_margins(s, sol);
  return sol;
}

PlacementSolution solve_fixed_power_placement(const Scenario& s, const PlacementOptions& opts) {
  if (s.gamma_it() == 0.0) return zero_power(s, "gamma = 0 forbids any transmission");
  const Hat h = hat_of(s);
  auto obj = [&](const Vec2& q) { return tau_fixed(s, h, q); };
  PlacementSolution sol = run_sdr(s, opts, true, obj);
  if (sol.method == "fixed-q") return sol;
  sol.pos.z = std::sqrt(*fixed_power_alt_sq(s, h, sol.pos.q));
  sol.p = s.p_max();
  sol.rate = achievable_rate(s, sol.pos, sol.p);
  fill_margins(s, sol);
  return sol;
}

PlacementSolution solve_single_pr(const Scenario& s) {
  if (s.num_prs() != 1) {
    throw UsageError("closed-form placement needs exactly one PR (K = " +
                     std::to_string(s.num_prs()) + ")");
  }
  if (s.gamma_it() == 0.0) return zero_power(s, "gamma = 0 forbids any transmission");
  const Hat h = hat_of(s);
  const Vec2 w = s.pr(0);
  const double wn = w.norm();
  const double h2 = s.h_min() * s.h_min();
  const double a_tilde = 0.5 * (std::sqrt(wn * wn + 4.0 * h2) - wn);
  const double p1 = h.c * (wn * wn + h2);
  const double p_tilde = h.c * ((a_tilde + wn) * (a_tilde + wn) + h2);

  double a, p_hat;
  if (h.p_hat > p_tilde) {
    a = a_tilde;
    p_hat = p_tilde;
  } else if (h.p_hat >= p1) {
    p_hat = h.p_hat;
    a = std::max(0.0, std::sqrt(h.p_hat / h.c - h2) - wn);
  } else {
    a = 0.0;
    p_hat = h.p_hat;
  }
  const Vec2 dir = wn > 0.0 ? Vec2(-w / wn) : Vec2(-1.0, 0.0);

  PlacementSolution sol;
  sol.pos = {a * dir, s.h_min()};
  sol.p = power_from_hat(s, p_hat);
  sol.rate = achievable_rate(s, sol.pos, sol.p);
  sol.tau_star = p_hat / (h2 + a * a);
  sol.method = "closed-form-k1";
  sol.diag.tau_upper = sol.tau_star;
  sol.diag.rank_ratio = 0.0;
  fill_margins(s, sol);
  return sol;
}

PlacementSolution evaluate_fixed_location(const Scenario& s, const Vec2& q) {
  PlacementSolution sol;
  sol.pos = {q, s.h_min()};
  sol.p = optimal_power(s, sol.pos);
  sol.rate = achievable_rate(s, sol.pos, sol.p);
  sol.tau_star = std::pow(sol.p, 2.0 / s.alpha()) / (s.h_min() * s.h_min() + q.squaredNorm());
  sol.method = "fixed-q";
  fill_margins(s, sol);
  return sol;
}

}  // namespace cuav
