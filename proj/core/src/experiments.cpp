#include "cuav/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cuav/errors.hpp"
#include "cuav/io.hpp"
#include "cuav/units.hpp"
#include "rng.hpp"

namespace cuav {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SchemeName {
  Scheme scheme;
  const char* name;
};

constexpr SchemeName kSchemes[] = {
    {Scheme::ProposedStatic, "proposed-static"},
    {Scheme::PowerOnly, "power-only"},
    {Scheme::PlacementOnly, "placement-only"},
    {Scheme::ProposedMobile, "proposed-mobile"},
    {Scheme::Mobile2D, "2d-mobile"},
    {Scheme::PowerOnInitialTraj, "power-on-initial-traj"},
};

struct ParamName {
  SweepParam param;
  const char* name;
};

constexpr ParamName kParams[] = {
    {SweepParam::PrDistance, "pr-distance"}, {SweepParam::Gamma, "gamma"},
    {SweepParam::PMax, "p-max"},             {SweepParam::KCount, "k-count"},
    {SweepParam::Duration, "duration"},
};

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
  return v;
}

void check_values(const std::vector<double>& v) {
  if (v.empty()) throw UsageError("sweep: empty value list");
  for (double x : v) {
    if (!std::isfinite(x)) throw UsageError("sweep: non-finite value");
  }
  if (v.size() < 2) return;
  const bool up = v[1] > v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
      throw UsageError("sweep: values must be strictly monotone");
    }
  }
}

double dbm_of(double w) { return w > 0.0 ? watts_to_dbm(w) : -INFINITY; }

std::string cell(double v) { return std::isnan(v) ? std::string() : format_number(v); }

}  // namespace

std::string to_string(Scheme s) {
  for (const auto& e : kSchemes) {
    if (e.scheme == s) return e.name;
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (const auto& e : kSchemes) {
    if (name == e.name) return e.scheme;
  }
  throw UsageError("unknown scheme '" + name + "'");
}

bool is_mobile(Scheme s) {
  return s == Scheme::ProposedMobile || s == Scheme::Mobile2D || s == Scheme::PowerOnInitialTraj;
}

std::string to_string(SweepParam p) {
  for (const auto& e : kParams) {
    if (e.param == p) return e.name;
  }
  return "?";
}

SweepParam parse_sweep_param(const std::string& name) {
  for (const auto& e : kParams) {
    if (name == e.name) return e.param;
  }
  throw UsageError("unknown sweep parameter '" + name + "'");
}

BenchmarkResult run_benchmark(Scheme scheme, const Scenario& s, const MissionProfile* m,
                              const BenchmarkOptions& opts) {
  BenchmarkResult r;
  r.scheme = scheme;
  if (is_mobile(scheme) && m == nullptr) {
    throw UsageError("scheme " + to_string(scheme) + " needs a mission profile");
  }
  switch (scheme) {
    case Scheme::ProposedStatic:
      r.placement = solve_placement(s, opts.placement);
      break;
    case Scheme::PowerOnly:
      r.placement = evaluate_fixed_location(s, Vec2::Zero());
      break;
    case Scheme::PlacementOnly:
      r.placement = solve_fixed_power_placement(s, opts.placement);
      break;
    case Scheme::ProposedMobile:
    case Scheme::Mobile2D: {
      PlanOptions po;
      po.placement = opts.placement;
      po.sca = opts.sca;
      po.fixed_altitude = scheme == Scheme::Mobile2D;
      po.warm_start_2d = scheme == Scheme::ProposedMobile;
      r.plan = plan(s, *m, po);
      break;
    }
    case Scheme::PowerOnInitialTraj: {
      PlanResult pr;
      m->validate(s);
      pr.t_min = min_duration(*m);
      pr.placement = solve_placement(s, opts.placement);
      pr.init = initial_trajectory(s, *m, pr.placement, &pr.init_info);
      pr.traj = pr.init;
      pr.state.q = pr.init.q;
      pr.state.z = pr.init.z;
      pr.state.history.push_back(pr.init.avg_rate);
      pr.state.converged = true;
      r.plan = std::move(pr);
      break;
    }
  }
  r.rate = r.plan ? r.plan->traj.avg_rate : r.placement->rate;
  return r;
}

std::vector<double> default_sweep_values(SweepParam p, const std::optional<MissionProfile>& m) {
  switch (p) {
    case SweepParam::Gamma:
      return range(-90.0, -45.0, 5.0);
    case SweepParam::PrDistance:
      return range(0.0, 600.0, 50.0);
    case SweepParam::PMax:
      return range(0.0, 40.0, 5.0);
    case SweepParam::KCount:
      return range(1.0, 10.0, 1.0);
    case SweepParam::Duration: {
      if (!m) throw UsageError("duration sweep needs a mission profile");
      const double t_min = min_duration(*m);
      std::vector<double> v{t_min};
      for (double t : range(120.0, 400.0, 40.0)) {
        if (t > t_min) v.push_back(t);
      }
      return v;
    }
  }
  return {};
}

std::vector<std::vector<Vec2>> random_layouts(std::uint64_t seed, int count, std::size_t k_max,
                                              double side) {
  if (count < 1 || k_max < 1 || !(side > 0.0)) throw UsageError("random layouts: bad arguments");
  detail::PortableRng rng(seed);
  std::vector<std::vector<Vec2>> out(static_cast<std::size_t>(count));
  const double h = 0.5 * side;
  for (auto& layout : out) {
    layout.resize(k_max);
    for (auto& w : layout) {
      const double x = rng.uniform(-h, h);
      const double y = rng.uniform(-h, h);
      w = Vec2(x, y);
    }
  }
  return out;
}

SweepTable run_sweep(const SweepSpec& spec) {
  std::vector<double> values =
      spec.values.empty() ? default_sweep_values(spec.param, spec.mission) : spec.values;
  check_values(values);

  std::vector<Scheme> schemes = spec.schemes;
  if (schemes.empty()) {
    if (spec.param == SweepParam::Duration) {
      schemes = {Scheme::ProposedMobile, Scheme::Mobile2D, Scheme::PowerOnInitialTraj};
    } else {
      schemes = {Scheme::ProposedStatic, Scheme::PowerOnly, Scheme::PlacementOnly};
    }
  }
  std::sort(schemes.begin(), schemes.end(),
            [](Scheme a, Scheme b) { return to_string(a) < to_string(b); });
  schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
  const bool any_mobile = std::any_of(schemes.begin(), schemes.end(), is_mobile);
  if ((any_mobile || spec.param == SweepParam::Duration) && !spec.mission) {
    throw UsageError("sweep: mobile schemes and duration sweeps need a mission profile");
  }

  const bool k_sweep = spec.param == SweepParam::KCount;
  std::vector<std::vector<Vec2>> layouts;
  if (k_sweep) {
    double k_max = 0.0;
    for (double v : values) {
      if (v < 1.0 || v != std::floor(v)) throw UsageError("k-count values must be positive integers");
      k_max = std::max(k_max, v);
    }
    layouts = random_layouts(spec.seed, spec.layouts, static_cast<std::size_t>(k_max), spec.layout_side);
  }
  if (spec.param == SweepParam::PrDistance && spec.base.pr_locations.empty()) {
    throw UsageError("pr-distance sweep needs at least one PR");
  }
  (void)Scenario(spec.base);  // validates the base before any work starts

  const std::size_t n_lay = k_sweep ? layouts.size() : 1;
  struct Task {
    std::size_t vi, li, si;
  };
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    for (std::size_t li = 0; li < n_lay; ++li) {
      for (std::size_t si = 0; si < schemes.size(); ++si) tasks.push_back({vi, li, si});
    }
  }
  std::vector<std::optional<BenchmarkResult>> results(tasks.size());

  auto run_task = [&](const Task& t) {
    const double v = values[t.vi];
    ScenarioParams sp = spec.base;
    std::optional<MissionProfile> mission = spec.mission;
    switch (spec.param) {
      case SweepParam::PrDistance:
        sp.pr_locations[0].x() = v;
        break;
      case SweepParam::Gamma:
        sp.gamma_it = dbm_to_watts(v);
        break;
      case SweepParam::PMax:
        sp.p_max = dbm_to_watts(v);
        break;
      case SweepParam::KCount: {
        const auto& l = layouts[t.li];
        sp.pr_locations.assign(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(v));
        break;
      }
      case SweepParam::Duration:
        mission->duration_t = v;
        break;
    }
    BenchmarkOptions bo = spec.bench;
    bo.placement.seed = spec.seed;
    const Scenario s(sp);
    return run_benchmark(schemes[t.si], s, mission ? &*mission : nullptr, bo);
  };

  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::size_t error_task = tasks.size();
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = run_task(tasks[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        // Report the earliest failing task so errors do not depend on timing.
        if (i < error_task) {
          error_task = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepTable table;
  table.param = spec.param;
  table.seed = spec.seed;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    for (std::size_t si = 0; si < schemes.size(); ++si) {
      SweepRow row;
      row.value = values[vi];
      row.scheme = schemes[si];
      nlohmann::ordered_json diag;
      if (k_sweep) {
        double sum = 0.0, lo = INFINITY, hi = -INFINITY;
        nlohmann::ordered_json rates = nlohmann::ordered_json::array();
        int iters = 0;
        for (std::size_t li = 0; li < n_lay; ++li) {
          const BenchmarkResult& b = *results[(vi * n_lay + li) * schemes.size() + si];
          sum += b.rate;
          lo = std::min(lo, b.rate);
          hi = std::max(hi, b.rate);
          rates.push_back(b.rate);
          if (b.plan) iters += b.plan->state.iterations;
        }
        row.rate = sum / static_cast<double>(n_lay);
        row.rate_min = lo;
        row.rate_max = hi;
        row.samples = static_cast<int>(n_lay);
        row.x = row.y = row.z = row.p_dbm = kNaN;
        row.sca_iters = iters;
        diag["layout_rates"] = rates;
      } else {
        const BenchmarkResult& b = *results[vi * schemes.size() + si];
        row.rate = row.rate_min = row.rate_max = b.rate;
        if (b.placement) {
          row.x = b.placement->pos.q.x();
          row.y = b.placement->pos.q.y();
          row.z = b.placement->pos.z;
          row.p_dbm = dbm_of(b.placement->p);
          const Scenario s = Scenario(spec.base);
          diag = nlohmann::ordered_json::parse(placement_to_json(s, *b.placement));
        } else {
          row.x = row.y = row.z = row.p_dbm = kNaN;
          row.sca_iters = b.plan->state.iterations;
          diag = nlohmann::ordered_json::parse(plan_to_json(Scenario(spec.base), *b.plan));
          diag.erase("slots");
        }
      }
      row.diagnostics = diag.dump();
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string sweep_to_csv(const SweepTable& t) {
  std::ostringstream os;
  os << "# seed=" << t.seed << '\n';
  os << "swept_param,value,scheme,rate_bpshz,x_m,y_m,z_m,p_dbm,sca_iters,samples,rate_min_bpshz,"
        "rate_max_bpshz\n";
  const std::string param = to_string(t.param);
  for (const SweepRow& r : t.rows) {
    os << param << ',' << cell(r.value) << ',' << to_string(r.scheme) << ',' << cell(r.rate) << ','
       << cell(r.x) << ',' << cell(r.y) << ',' << cell(r.z) << ',' << cell(r.p_dbm) << ','
       << r.sca_iters << ',' << r.samples << ',' << cell(r.rate_min) << ',' << cell(r.rate_max)
       << '\n';
  }
  return os.str();
}

std::string sweep_to_json(const SweepTable& t) {
  nlohmann::ordered_json j;
  j["swept_param"] = to_string(t.param);
  j["seed"] = t.seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& r : t.rows) {
    nlohmann::ordered_json o;
    o["value"] = r.value;
    o["scheme"] = to_string(r.scheme);
    o["rate_bpshz"] = r.rate;
    o["samples"] = r.samples;
    o["diagnostics"] = nlohmann::ordered_json::parse(r.diagnostics);
    rows.push_back(std::move(o));
  }
  j["points"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace cuav
