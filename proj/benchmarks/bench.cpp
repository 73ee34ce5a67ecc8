// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "blindsim/analyzer.hpp"
#include "blindsim/brickwork.hpp"
#include "blindsim/fourstate.hpp"
#include "blindsim/prep.hpp"
#include "blindsim/schur.hpp"
#include "blindsim/twostate.hpp"
#include "blindsim/ubqc.hpp"

using namespace blindsim;

namespace {

CMat random_herm(int d, Rng& rng) {
  std::normal_distribution<double> g;
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cx(g(rng), g(rng));
  return CMat((m + m.adjoint()) / 2);
}

void BM_TraceDistance(benchmark::State& state) {
  Rng rng(11);
  int d = int(state.range(0));
  CMat a = random_herm(d, rng), b = random_herm(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_TraceDistance)->Arg(16)->Arg(64)->Arg(128);

void BM_PartialTrace(benchmark::State& state) {
  Rng rng(12);
  CMat rho = random_herm(64, rng);
  std::vector<int> dims{4, 4, 4}, keep{0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, dims, keep));
}
BENCHMARK(BM_PartialTrace);

void BM_BrickworkRun(benchmark::State& state) {
  Rng rng(13);
  BrickworkPattern pat = build_brickwork(2, int(state.range(0)));
  auto grid = eight_angles();
  for (int v = 0; v < pat.measured(); ++v) pat.phi[v] = grid[v % 8];
  CVec in = CVec::Zero(4);
  in(0) = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_pattern(pat, dm(in), rng));
}
BENCHMARK(BM_BrickworkRun)->Arg(2)->Arg(4);

void BM_UbqcRound(benchmark::State& state) {
  Rng rng(14);
  BrickworkPattern pat = build_brickwork(2, 2);
  auto grid = eight_angles();
  for (int v = 0; v < pat.measured(); ++v) pat.phi[v] = grid[(3 * v) % 8];
  CVec in = CVec::Zero(4);
  in(0) = 1;
  CMat rho = dm(in);
  BobBehavior bob;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_ubqc(pat, rho, ideal_prep(), bob, rng));
}
BENCHMARK(BM_UbqcRound);

void BM_CheckWeak(benchmark::State& state) {
  Rng rng(15);
  PrepStateFamily fam = random_weak_family(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_weak(fam));
}
BENCHMARK(BM_CheckWeak);

void BM_Steering(benchmark::State& state) {
  Rng rng(16);
  PrepStateFamily fam = random_weak_family(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(steering_measurements(fam));
}
BENCHMARK(BM_Steering);

void BM_FourStateDistribution(benchmark::State& state) {
  std::array<int, 4> o{0, 1, 0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(four_state_distribution(o));
}
BENCHMARK(BM_FourStateDistribution);

void BM_TwoStateDistribution(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_state_distribution(n));
}
BENCHMARK(BM_TwoStateDistribution)->Arg(8)->Arg(40);

void BM_BoundsFull(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_state_bounds_full(n));
}
BENCHMARK(BM_BoundsFull)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BoundsSchur(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_state_bounds_schur(n));
}
BENCHMARK(BM_BoundsSchur)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SchurBlocks(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(schur_blocks(n));
}
BENCHMARK(BM_SchurBlocks)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
