#include <benchmark/benchmark.h>

#include <cmath>

#include "vvlab/corpus.hpp"
#include "vvlab/entropy.hpp"
#include "vvlab/harness.hpp"
#include "vvlab/quadrature.hpp"
#include "vvlab/reference.hpp"
#include "vvlab/solver.hpp"

using namespace vvl;

static void BM_Step(benchmark::State& state) {
  const auto spec = make_problem("burgers_shock");
  const Grid1D grid(static_cast<int>(state.range(0)), 0.0, 1.0);
  SolverConfig c;
  c.epsilon = 0.01;
  c.delta = 1e-3;
  const auto u = sample_on_grid(grid, spec.initial);
  const double dt = stable_dt(u, spec, c);
  for (auto _ : state) benchmark::DoNotOptimize(step(u, dt, spec, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(400)->Arg(2000)->Arg(8000);

static void BM_Solve(benchmark::State& state) {
  const auto spec = make_problem("burgers_shock");
  const Grid1D grid(static_cast<int>(state.range(0)), 0.0, 1.0);
  SolverConfig c;
  c.epsilon = 0.025;
  c.delta = 1e-3;
  c.t_end = 0.3;
  c.record_every = 50;
  for (auto _ : state) benchmark::DoNotOptimize(solve(spec, grid, c));
}
BENCHMARK(BM_Solve)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_Godunov(benchmark::State& state) {
  const auto spec = make_problem("burgers_shock");
  for (auto _ : state) benchmark::DoNotOptimize(godunov_solve(spec, static_cast<int>(state.range(0)), 0.3, 1000));
}
BENCHMARK(BM_Godunov)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_AdaptiveQuadrature(benchmark::State& state) {
  const auto f = [](double x) { return std::sin(8.0 * x) * std::exp(-x); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_adaptive(f, 0.0, 3.0, 1e-10));
}
BENCHMARK(BM_AdaptiveQuadrature);

static void BM_BoundaryFluxQ(benchmark::State& state) {
  const auto f = flux::burgers();
  const BoundaryEntropyPair pair(0.2, static_cast<int>(state.range(0)), f);
  for (auto _ : state) benchmark::DoNotOptimize(pair.Q(0.7, -0.4));
}
BENCHMARK(BM_BoundaryFluxQ)->Arg(10)->Arg(100);

static void BM_OttoInterior(benchmark::State& state) {
  const auto spec = make_problem("burgers_shock");
  SolverConfig c;
  c.epsilon = 0.025;
  c.delta = 1e-3;
  c.record_every = 20;
  const auto traj = solve(spec, Grid1D(400, 0.0, 1.0), c);
  std::vector<double> ks;
  for (int i = 0; i <= 20; ++i) ks.push_back(-1.1 + 0.11 * i);
  const auto corpus = interior_corpus(spec.domain, c.t_end, 7);
  for (auto _ : state) benchmark::DoNotOptimize(check_otto_interior(traj, spec.flux, ks, corpus));
}
BENCHMARK(BM_OttoInterior)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
