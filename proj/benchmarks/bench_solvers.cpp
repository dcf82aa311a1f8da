#include <benchmark/benchmark.h>

#include "cuav/block_tridiagonal.hpp"
#include "cuav/placement.hpp"
#include "cuav/sdp_feasibility.hpp"
#include "cuav/smooth_convex.hpp"
#include "cuav/trajectory.hpp"
#include "cuav/units.hpp"
#include "programs.hpp"

namespace {

using namespace cuav;

Scenario with_prs(int k) {
  static const Vec2 pool[] = {{100, 0},   {120, 60},  {150, -40}, {90, -110}, {-200, 150},
                              {-80, -220}, {250, 230}, {-260, -30}, {30, 280},  {180, -260}};
  ScenarioParams p;
  p.pr_locations.assign(pool, pool + k);
  return Scenario(p);
}

void BM_SdpFeasibility(benchmark::State& st) {
  SdpInstance inst;
  inst.pr_locations = with_prs(static_cast<int>(st.range(0))).pr_locations();
  inst.tau = 1e-8;
  inst.it_ratio = 1e8;
  inst.p_hat_max = dbm_to_watts(23.0);
  inst.alt_sq_min = inst.alt_sq_max = 170.0 * 170.0;
  for (auto _ : st) benchmark::DoNotOptimize(solve_sdp_feasibility(inst));
}
BENCHMARK(BM_SdpFeasibility)->Arg(1)->Arg(3)->Arg(10);

void BM_SolvePlacement(benchmark::State& st) {
  const Scenario s = with_prs(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_placement(s));
}
BENCHMARK(BM_SolvePlacement)->Arg(1)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SinglePrClosedForm(benchmark::State& st) {
  const Scenario s = with_prs(1);
  for (auto _ : st) benchmark::DoNotOptimize(solve_single_pr(s));
}
BENCHMARK(BM_SinglePrClosedForm);

void BM_BlockTridiagonalSolve(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  BlockTridiagonal m(n, 5);
  for (int i = 0; i < n; ++i) {
    m.diag(i) = BlockTridiagonal::Block::Identity(5, 5) * 4.0;
    if (i + 1 < n) m.lower(i) = BlockTridiagonal::Block::Constant(5, 5, 0.1);
  }
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m.dim());
  Eigen::VectorXd x;
  for (auto _ : st) benchmark::DoNotOptimize(m.solve(rhs, x));
  st.SetComplexityN(n);
}
BENCHMARK(BM_BlockTridiagonalSolve)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_SmoothConvex(benchmark::State& st) {
  const auto rp = testing::random_program(static_cast<int>(st.range(0)), false, 3);
  for (auto _ : st) benchmark::DoNotOptimize(solve_smooth_convex(rp.prog, rp.start));
}
BENCHMARK(BM_SmoothConvex)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PlanReferenceMission(benchmark::State& st) {
  ScenarioParams p;
  p.pr_locations = {{-900, 600}, {-700, 850}, {-550, 450}, {-300, 700}, {-600, -500},
                    {500, 600},  {300, -500}, {650, -450}, {550, -850}, {850, -700}};
  p.gamma_it = dbm_to_watts(-70.0);
  const Scenario s(p);
  const MissionProfile m;
  for (auto _ : st) benchmark::DoNotOptimize(plan(s, m));
}
BENCHMARK(BM_PlanReferenceMission)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
