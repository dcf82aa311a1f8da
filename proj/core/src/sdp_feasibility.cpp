#include "cuav/sdp_feasibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "cuav/errors.hpp"

namespace cuav {

namespace {

// Newton variables: s11 s12 s13 s22 s23 v t. S33 == 1 is eliminated; v is the
// normalized power (free-power mode) or the normalized squared altitude.
constexpr int kN = 7;
constexpr int kV = 5;
constexpr int kT = 6;
using Vec7 = Eigen::Matrix<double, kN, 1>;
using Mat7 = Eigen::Matrix<double, kN, kN>;
using Row6 = Eigen::Matrix<double, 6, 1>;

struct Row {
  Row6 a;
  double b;
};

Eigen::Matrix3d basis(int j) {
  static const std::array<std::array<int, 2>, 5> idx = {{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}}};
  Eigen::Matrix3d e = Eigen::Matrix3d::Zero();
  e(idx[j][0], idx[j][1]) = 1.0;
  e(idx[j][1], idx[j][0]) = 1.0;
  return e;
}

Eigen::Matrix3d to_s(const Vec7& x) {
  Eigen::Matrix3d s;
  s << x(0), x(1), x(2), x(1), x(3), x(4), x(2), x(4), 1.0;
  return s;
}

class PhaseOne {
 public:
  PhaseOne(const SdpInstance& inst, const SdpOptions& opts) : opts_(opts) {
    len2_ = inst.alt_sq_min;
    len_ = std::sqrt(len2_);
    kappa_ = inst.it_ratio;
    fixed_ = inst.fixed_power;
    const double tau_n = kappa_ * inst.tau;
    const double p_n = kappa_ * inst.p_hat_max / len2_;
    v_lo_ = fixed_ ? 1.0 : 0.0;
    v_hi_ = fixed_ ? inst.alt_sq_max / len2_ : p_n;
    v_frozen_ = !(v_hi_ > v_lo_);
    scale_ = 1.0 + p_n;

    Row obj;
    if (fixed_) {
      obj.a << -tau_n, 0, 0, -tau_n, 0, -tau_n;
      obj.b = p_n;
    } else {
      obj.a << -tau_n, 0, 0, -tau_n, 0, 1.0;
      obj.b = -tau_n;
    }
    rows_.push_back(obj);
    for (const Vec2& w0 : inst.pr_locations) {
      const Vec2 w = w0 / len_;
      Row r;
      r.a << 1.0, 0.0, -2.0 * w.x(), 1.0, -2.0 * w.y(), fixed_ ? 1.0 : -1.0;
      r.b = w.squaredNorm() + (fixed_ ? -p_n : 1.0);
      rows_.push_back(r);
    }
    if (!v_frozen_) {
      Row lo, hi;
      lo.a.setZero();
      lo.a(kV) = 1.0;
      lo.b = -v_lo_;
      hi.a.setZero();
      hi.a(kV) = -1.0;
      hi.b = v_hi_;
      rows_.push_back(lo);
      rows_.push_back(hi);
    }
    degree_ = static_cast<double>(rows_.size()) + 3.0;
    for (int j = 0; j < 5; ++j) e_[j] = basis(j);
  }

  SdpOutcome run() {
    Vec7 x = Vec7::Zero();
    Eigen::Matrix3d s0 = Eigen::Matrix3d::Identity();
    if (opts_.warm_start) {
      Eigen::Matrix3d w = *opts_.warm_start;
      if (std::abs(w(2, 2)) > 0) w /= w(2, 2);
      Eigen::DiagonalMatrix<double, 3> d(1.0 / len_, 1.0 / len_, 1.0);
      Eigen::Matrix3d wn = d * w * d;
      // Blend with the identity so the start is safely interior.
      wn = 0.5 * wn + 0.5 * Eigen::Matrix3d::Identity();
      wn /= wn(2, 2);
      if (Eigen::LLT<Eigen::Matrix3d>(wn).info() == Eigen::Success) s0 = wn;
    }
    x << s0(0, 0), s0(0, 1), s0(0, 2), s0(1, 1), s0(1, 2), 0.5 * (v_lo_ + v_hi_), 0.0;
    x(kT) = min_g(x) - 1.0;

    SdpOutcome out;
    double tb = 1.0;
    for (int stage = 0; stage < opts_.max_stages; ++stage, tb *= 10.0) {
      out.stages = stage + 1;
      for (int it = 0; it < opts_.max_newton; ++it) {
        if (opts_.stop_when_feasible && min_g(x) >= 0.0) return finish(x, SdpStatus::Feasible, out);
        Vec7 g;
        Mat7 h;
        derivatives(x, tb, g, h);
        Eigen::LDLT<Mat7> ldlt(h);
        const Vec7 dx = -ldlt.solve(g);
        const double dec2 = -g.dot(dx);
        if (!(dec2 >= 0.0) || !dx.allFinite()) break;
        if (dec2 < 1e-12) break;
        const double f0 = value(x, tb);
        double step = 1.0;
        double f1 = std::numeric_limits<double>::infinity();
        while (step > 1e-14) {
          const Vec7 xn = x + step * dx;
          f1 = value(xn, tb);
          if (std::isfinite(f1) && f1 <= f0 - 0.01 * step * dec2) break;
          step *= 0.5;
        }
        if (step <= 1e-14) break;
        x += step * dx;
        ++out.newton_steps;
      }
      const double mu = 1.0 / tb;
      if (opts_.stop_when_feasible && min_g(x) >= 0.0) return finish(x, SdpStatus::Feasible, out);
      if (x(kT) + degree_ * mu < -opts_.eps_feas * scale_) {
        return finish(x, SdpStatus::Infeasible, out);
      }
    }
    const double t_best = min_g(x);
    if (t_best >= -opts_.eps_feas * scale_) return finish(x, SdpStatus::Feasible, out);
    return finish(x, SdpStatus::Indeterminate, out);
  }

 private:
  double g_row(const Row& r, const Vec7& x) const { return r.a.dot(x.head<6>()) + r.b; }

  double min_g(const Vec7& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const Row& r : rows_) m = std::min(m, g_row(r, x));
    return m;
  }

  // -tb * t - sum log(g_i - t) - log det S;  +inf outside the domain.
  double value(const Vec7& x, double tb) const {
    double f = -tb * x(kT);
    for (const Row& r : rows_) {
      const double sl = g_row(r, x) - x(kT);
      if (!(sl > 0.0)) return std::numeric_limits<double>::infinity();
      f -= std::log(sl);
    }
    Eigen::LLT<Eigen::Matrix3d> llt(to_s(x));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Eigen::Matrix3d& l = llt.matrixL();
    for (int i = 0; i < 3; ++i) {
      if (!(l(i, i) > 0.0)) return std::numeric_limits<double>::infinity();
      f -= 2.0 * std::log(l(i, i));
    }
    return f;
  }

  void derivatives(const Vec7& x, double tb, Vec7& g, Mat7& h) const {
    g.setZero();
    h.setZero();
    g(kT) = -tb;
    for (const Row& r : rows_) {
      Vec7 a;
      a.head<6>() = r.a;
      a(kT) = -1.0;
      const double sl = g_row(r, x) - x(kT);
      g -= a / sl;
      h += (a * a.transpose()) / (sl * sl);
    }
    const Eigen::Matrix3d sinv = to_s(x).inverse();
    std::array<Eigen::Matrix3d, 5> m;
    for (int j = 0; j < 5; ++j) {
      m[j] = sinv * e_[j];
      g(j) -= m[j].trace();
    }
    for (int j = 0; j < 5; ++j) {
      for (int l = j; l < 5; ++l) {
        const double v = (m[j] * m[l]).trace();
        h(j, l) += v;
        h(l, j) = h(j, l);
      }
    }
    if (v_frozen_) {
      g(kV) = 0.0;
      h.row(kV).setZero();
      h.col(kV).setZero();
      h(kV, kV) = 1.0;
    }
  }

  SdpOutcome finish(const Vec7& x, SdpStatus status, SdpOutcome out) const {
    out.status = status;
    Eigen::DiagonalMatrix<double, 3> d(len_, len_, 1.0);
    out.s_mat = d * to_s(x) * d;
    out.max_slack = x(kT);
    out.residual = std::max(0.0, -min_g(x)) / scale_;
    if (fixed_) {
      out.p_hat = p_hat_max_phys();
      out.alt_sq = x(kV) * len2_;
    } else {
      out.p_hat = std::max(0.0, x(kV)) * len2_ / kappa_;
      out.alt_sq = len2_;
    }
    return out;
  }

  double p_hat_max_phys() const { return (scale_ - 1.0) * len2_ / kappa_; }

  const SdpOptions& opts_;
  std::vector<Row> rows_;
  std::array<Eigen::Matrix3d, 5> e_;
  double len_ = 1.0, len2_ = 1.0, kappa_ = 1.0;
  double v_lo_ = 0.0, v_hi_ = 1.0, scale_ = 1.0, degree_ = 1.0;
  bool fixed_ = false, v_frozen_ = false;
};

}  // namespace

Eigen::Matrix3d SdpInstance::a_mat() { return Eigen::Vector3d(1.0, 1.0, 0.0).asDiagonal(); }

Eigen::Matrix3d SdpInstance::c_mat() { return Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal(); }

Eigen::Matrix3d SdpInstance::b_mat(std::size_t k) const {
  if (k >= pr_locations.size()) throw InvalidArgument("PR index out of range");
  const Vec2& w = pr_locations[k];
  Eigen::Matrix3d b = Eigen::Matrix3d::Identity();
  b(0, 2) = b(2, 0) = -w.x();
  b(1, 2) = b(2, 1) = -w.y();
  b(2, 2) = w.squaredNorm();
  return b;
}

void SdpInstance::validate() const {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("invalid SDP instance: ") + what);
  };
  check(!pr_locations.empty(), "no PR locations");
  for (const auto& w : pr_locations) check(w.allFinite(), "non-finite PR location");
  check(std::isfinite(tau), "tau must be finite");
  check(std::isfinite(it_ratio) && it_ratio > 0.0, "it_ratio must be positive");
  check(std::isfinite(p_hat_max) && p_hat_max > 0.0, "p_hat_max must be positive");
  check(std::isfinite(alt_sq_min) && alt_sq_min > 0.0, "alt_sq_min must be positive");
  check(std::isfinite(alt_sq_max) && alt_sq_max >= alt_sq_min, "alt_sq_max < alt_sq_min");
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Feasible: return "feasible";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Indeterminate: return "numerically-indeterminate";
  }
  return "?";
}

SdpOutcome solve_sdp_feasibility(const SdpInstance& inst, const SdpOptions& opts) {
  inst.validate();
  if (!inst.fixed_power && inst.tau <= 0.0) {
    SdpOutcome out;
    out.status = SdpStatus::Feasible;
    out.s_mat = SdpInstance::c_mat();
    out.p_hat = 0.0;
    out.alt_sq = inst.alt_sq_min;
    return out;
  }
  return PhaseOne(inst, opts).run();
}

}  // namespace cuav
