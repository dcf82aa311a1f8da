#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuav/config.hpp"
#include "cuav/errors.hpp"
#include "cuav/experiments.hpp"
#include "cuav/io.hpp"
#include "cuav/placement.hpp"
#include "cuav/trajectory.hpp"

namespace cuav::cli {

namespace {

struct Common {
  std::string scenario;
  std::string mission;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t n_slots = 0;
  double eps_sca = 1e-4;
  double eps_bis = 1e-6;
  double eps_feas = 1e-8;
  double rank_tol = 1e-4;
  int jobs = 1;
  bool verbose = false;
};

void add_common(CLI::App* app, Common& c, bool mission) {
  app->add_option("--scenario", c.scenario, "Scenario TOML file")->required();
  if (mission) {
    app->add_option("--mission", c.mission,
                    "Mission TOML file (default: the [mission] table of the scenario file)");
    app->add_option("--n-slots", c.n_slots, "Slot count override (0: one per second plus one)");
    app->add_option("--eps-sca", c.eps_sca, "SCA stop threshold on the average-rate gain, bps/Hz");
  }
  app->add_option("--out", c.out, "Output path (default: stdout)");
  app->add_option("--seed", c.seed, "Seed for randomization and random layouts");
  app->add_option("--eps-bis", c.eps_bis, "Relative bisection tolerance");
  app->add_option("--eps-feas", c.eps_feas, "Feasibility tolerance of the lifted problems");
  app->add_option("--rank-tol", c.rank_tol, "lambda2/lambda1 above which randomization runs");
  app->add_flag("--verbose,-v", c.verbose, "Progress and solver details on stderr");
}

PlacementOptions placement_options(const Common& c) {
  PlacementOptions o;
  o.eps_bis = c.eps_bis;
  o.eps_feas = c.eps_feas;
  o.rank_tol = c.rank_tol;
  o.seed = c.seed;
  return o;
}

ScaOptions sca_options(const Common& c) {
  ScaOptions o;
  o.eps_sca = c.eps_sca;
  return o;
}

struct Inputs {
  Scenario scenario;
  std::optional<MissionProfile> mission;
};

Inputs load_inputs(const Common& c) {
  ScenarioFile f = load_scenario(c.scenario);
  Inputs in{std::move(f.scenario), std::move(f.mission)};
  if (!c.mission.empty()) in.mission = load_mission(c.mission);
  if (in.mission && c.n_slots != 0) in.mission->n_slots = c.n_slots;
  return in;
}

const MissionProfile& need_mission(const Inputs& in) {
  if (!in.mission) throw UsageError("no mission profile: pass --mission or add a [mission] table");
  return *in.mission;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> v;
  auto to_d = [&](const std::string& s) {
    std::size_t used = 0;
    double x;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("--values: cannot parse '" + s + "'");
    }
    if (used != s.size()) throw UsageError("--values: cannot parse '" + s + "'");
    return x;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--values: expected lo:step:hi");
    const double lo = to_d(parts[0]), step = to_d(parts[1]), hi = to_d(parts[2]);
    if (!(step > 0.0) || hi < lo) throw UsageError("--values: need step > 0 and hi >= lo");
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
    return v;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) v.push_back(to_d(p));
  return v;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    out << text;
    out.flush();
  } else {
    write_output(c.out, text);
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string fixed(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

int cmd_place(const Common& c, const std::string& method, bool trace, std::ostream& out,
              std::ostream& err) {
  const Inputs in = load_inputs(c);
  PlacementSolution sol;
  if (method == "closed-form") {
    sol = solve_single_pr(in.scenario);
  } else {
    sol = solve_placement(in.scenario, placement_options(c));
  }
  if (c.verbose) {
    err << "method " << sol.method << ", " << sol.diag.bisection_iters << " bisection steps, "
        << sol.diag.newton_steps << " Newton steps, rank ratio " << sol.diag.rank_ratio << "\n";
  }
  emit(c, out, placement_to_json(in.scenario, sol, trace));
  return kOk;
}

int cmd_plan(const Common& c, const std::string& scheme_name, const std::string& format,
             std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(c);
  const MissionProfile& m = need_mission(in);
  const Scheme scheme = parse_scheme(scheme_name);
  if (!is_mobile(scheme)) throw UsageError("plan: scheme must be a mobile scheme");
  BenchmarkOptions bo;
  bo.placement = placement_options(c);
  bo.sca = sca_options(c);
  const BenchmarkResult r = run_benchmark(scheme, in.scenario, &m, bo);
  const PlanResult& p = *r.plan;
  if (c.verbose) {
    err << "T_min = " << fixed(p.t_min, 1) << " s, " << p.traj.n_slots() << " slots, "
        << p.state.iterations << " SCA iterations\n";
    for (std::size_t i = 0; i < p.state.history.size(); ++i) {
      err << "  iter " << i << ": avg rate " << p.state.history[i] << "\n";
    }
    for (const auto& w : p.state.warnings) err << "warning: " << w << "\n";
  }
  bool json = format == "json";
  if (format.empty()) json = ends_with(c.out, ".json");
  emit(c, out, json ? plan_to_json(in.scenario, p) : trajectory_to_csv(p.traj));
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& param, const std::string& values,
              const std::vector<std::string>& schemes, int layouts, std::string sidecar,
              std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(c);
  SweepSpec spec;
  spec.param = parse_sweep_param(param);
  if (!values.empty()) spec.values = parse_values(values);
  spec.base = in.scenario.params();
  spec.mission = in.mission;
  for (const auto& s : schemes) spec.schemes.push_back(parse_scheme(s));
  spec.seed = c.seed;
  spec.layouts = layouts;
  spec.jobs = c.jobs;
  spec.bench.placement = placement_options(c);
  spec.bench.sca = sca_options(c);

  const auto t0 = std::chrono::steady_clock::now();
  const SweepTable table = run_sweep(spec);
  if (c.verbose) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << table.rows.size() << " rows in " << fixed(s, 2) << " s\n";
  }
  emit(c, out, sweep_to_csv(table));
  if (sidecar.empty() && !c.out.empty() && c.out != "-") sidecar = c.out + ".json";
  if (!sidecar.empty()) write_output(sidecar, sweep_to_json(table));
  return kOk;
}

int cmd_bench(const Common& c, const std::vector<std::string>& names, std::ostream& out,
              std::ostream& err) {
  const Inputs in = load_inputs(c);
  std::vector<Scheme> schemes;
  for (const auto& n : names) schemes.push_back(parse_scheme(n));
  if (schemes.empty()) {
    schemes = {Scheme::ProposedStatic, Scheme::PowerOnly, Scheme::PlacementOnly};
    if (in.mission) {
      schemes.insert(schemes.end(),
                     {Scheme::ProposedMobile, Scheme::Mobile2D, Scheme::PowerOnInitialTraj});
    }
  }
  BenchmarkOptions bo;
  bo.placement = placement_options(c);
  bo.sca = sca_options(c);
  std::ostringstream os;
  os << "scheme,rate_bpshz,runtime_s\n";
  for (Scheme s : schemes) {
    const auto t0 = std::chrono::steady_clock::now();
    const BenchmarkResult r =
        run_benchmark(s, in.scenario, in.mission ? &*in.mission : nullptr, bo);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    os << to_string(s) << ',' << format_number(r.rate) << ',' << fixed(dt, 4) << '\n';
    if (c.verbose) err << to_string(s) << " done\n";
  }
  emit(c, out, os.str());
  return kOk;
}

int cmd_oracle(const Common& c, double step, double box, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(c);
  GridSpec g;
  g.x_min = g.y_min = -box;
  g.x_max = g.y_max = box;
  g.z_min = g.z_max = in.scenario.h_min();
  g.step_xy = step;
  const GridResult r = grid_oracle(in.scenario, g);
  const PlacementSolution sol = solve_placement(in.scenario, placement_options(c));
  const double slack = grid_lipschitz_bound(in.scenario, step);
  if (c.verbose) err << r.points << " grid points\n";
  std::ostringstream os;
  os << "{\n"
     << "  \"grid\": {\"x_m\": " << format_number(r.pos.q.x()) << ", \"y_m\": "
     << format_number(r.pos.q.y()) << ", \"z_m\": " << format_number(r.pos.z)
     << ", \"power_w\": " << format_number(r.p) << ", \"rate_bpshz\": " << format_number(r.rate)
     << ", \"points\": " << r.points << "},\n"
     << "  \"sdr\": {\"x_m\": " << format_number(sol.pos.q.x()) << ", \"y_m\": "
     << format_number(sol.pos.q.y()) << ", \"z_m\": " << format_number(sol.pos.z)
     << ", \"power_w\": " << format_number(sol.p) << ", \"rate_bpshz\": "
     << format_number(sol.rate) << "},\n"
     << "  \"step_m\": " << format_number(step) << ",\n"
     << "  \"lipschitz_slack_bpshz\": " << format_number(slack) << ",\n"
     << "  \"within_slack\": " << (r.rate <= sol.rate + slack ? "true" : "false") << "\n"
     << "}\n";
  emit(c, out, os.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Placement, trajectory and power planning for a cognitive UAV transmitter"};
  app.require_subcommand(1);

  Common c;
  auto* place = app.add_subcommand("place", "Static placement and power");
  add_common(place, c, false);
  std::string method = "sdr";
  bool trace = false;
  place->add_option("--method", method, "sdr or closed-form (single PR only)")
      ->check(CLI::IsMember({"sdr", "closed-form"}));
  place->add_flag("--trace", trace, "Include the bisection trace");

  auto* plan_cmd = app.add_subcommand("plan", "Trajectory and power over a mission");
  add_common(plan_cmd, c, true);
  std::string scheme = "proposed-mobile";
  std::string format;
  plan_cmd->add_option("--scheme", scheme, "proposed-mobile, 2d-mobile or power-on-initial-traj");
  plan_cmd->add_option("--format", format, "csv or json (default: by --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over benchmark schemes");
  add_common(sweep, c, true);
  std::string param;
  std::string values;
  std::vector<std::string> schemes;
  int layouts = 100;
  std::string sidecar;
  sweep->add_option("--param", param, "pr-distance, gamma, p-max, k-count or duration")->required();
  sweep->add_option("--values", values, "Comma list or lo:step:hi (default: built-in range)");
  sweep->add_option("--schemes", schemes, "Schemes to run")->delimiter(',');
  sweep->add_option("--layouts", layouts, "Random layouts per k-count point");
  sweep->add_option("--sidecar", sidecar, "JSON diagnostics path (default: <out>.json)");
  sweep->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Run benchmark schemes once each");
  add_common(bench, c, true);
  std::vector<std::string> bench_schemes;
  bench->add_option("--schemes", bench_schemes, "Schemes to run")->delimiter(',');

  auto* oracle = app.add_subcommand("oracle", "Grid search at z = h_min against the SDR solution");
  add_common(oracle, c, false);
  double step = 5.0;
  double box = 600.0;
  oracle->add_option("--step", step, "Grid step, m")->check(CLI::PositiveNumber);
  oracle->add_option("--box", box, "Half width of the search square, m")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (*place) return cmd_place(c, method, trace, out, err);
    if (*plan_cmd) return cmd_plan(c, scheme, format, out, err);
    if (*sweep) return cmd_sweep(c, param, values, schemes, layouts, sidecar, out, err);
    if (*bench) return cmd_bench(c, bench_schemes, out, err);
    if (*oracle) return cmd_oracle(c, step, box, out, err);
  } catch (const InfeasibleMission& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kConfigError;
}

}  // namespace cuav::cli
