#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuav/placement.hpp"
#include "cuav/scenario.hpp"
#include "cuav/trajectory.hpp"

namespace cuav {

enum class Scheme {
  ProposedStatic,
  PowerOnly,
  PlacementOnly,
  ProposedMobile,
  Mobile2D,
  PowerOnInitialTraj,
};

std::string to_string(Scheme s);
/// Throws UsageError for unknown names.
Scheme parse_scheme(const std::string& name);
bool is_mobile(Scheme s);

struct BenchmarkOptions {
  PlacementOptions placement;
  ScaOptions sca;
};

struct BenchmarkResult {
  Scheme scheme = Scheme::ProposedStatic;
  double rate = 0.0;  // average rate for the mobile schemes
  std::optional<PlacementSolution> placement;
  std::optional<PlanResult> plan;
};

/// Throws UsageError when a mobile scheme has no mission.
BenchmarkResult run_benchmark(Scheme scheme, const Scenario& s, const MissionProfile* m = nullptr,
                              const BenchmarkOptions& opts = {});

enum class SweepParam { PrDistance, Gamma, PMax, KCount, Duration };

std::string to_string(SweepParam p);
SweepParam parse_sweep_param(const std::string& name);

struct SweepSpec {
  SweepParam param = SweepParam::Gamma;
  std::vector<double> values;  // empty: default range (see default_sweep_values)
  ScenarioParams base;
  std::optional<MissionProfile> mission;
  std::vector<Scheme> schemes;  // empty: the static or mobile trio, by parameter
  std::uint64_t seed = 1;
  int layouts = 100;        // k-count only
  double layout_side = 200.0;  // m, square centred on the SR
  int jobs = 1;
  BenchmarkOptions bench;
};

/// gamma: -90..-45 dBm step 5; pr-distance: 0..600 m step 50; p-max: 0..40 dBm
/// step 5; k-count: 1..10; duration: T_min, then 120..400 s step 40.
std::vector<double> default_sweep_values(SweepParam p, const std::optional<MissionProfile>& m);

/// Random PR layouts shared across K: layout l takes the first K points of
/// one seeded draw.
std::vector<std::vector<Vec2>> random_layouts(std::uint64_t seed, int count, std::size_t k_max,
                                              double side);

struct SweepRow {
  double value = 0.0;
  Scheme scheme = Scheme::ProposedStatic;
  double rate = 0.0;
  // Static schemes: the placement. Empty (NaN) for averages over layouts.
  double x = 0.0, y = 0.0, z = 0.0, p_dbm = 0.0;
  int sca_iters = 0;
  int samples = 1;
  double rate_min = 0.0, rate_max = 0.0;
  std::string diagnostics;  // JSON object text
};

struct SweepTable {
  SweepParam param = SweepParam::Gamma;
  std::uint64_t seed = 1;
  std::vector<SweepRow> rows;  // sorted by value, then scheme name
};

SweepTable run_sweep(const SweepSpec& spec);

std::string sweep_to_csv(const SweepTable& t);
std::string sweep_to_json(const SweepTable& t);

}  // namespace cuav
