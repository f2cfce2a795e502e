// Copyright 2026 The ebsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ebsched/generators.hpp"
#include "ebsched/milp.hpp"

namespace ebsched {
namespace {

void BM_SolveCurve(benchmark::State& state) {
  const auto profile = ChargingPowerProfile::Quadratic(1.0 / 1800.0, 0.8);
  CurveOptions o;
  o.interpolation_tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto curve = solve_max_power_curve(profile, o);
    benchmark::DoNotOptimize(curve.t_full());
    state.counters["samples"] = static_cast<double>(curve.samples().size());
  }
}
BENCHMARK(BM_SolveCurve)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ChargeIncrement(benchmark::State& state) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Quadratic(1.0 / 1800.0, 0.8));
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(charge_increment(curve, y, 300.0));
    y = y > 0.99 ? 0.0 : y + 0.0137;
  }
}
BENCHMARK(BM_ChargeIncrement);

void BM_BuildDomain(benchmark::State& state) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Quadratic(1.0 / 1800.0, 0.8));
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto under = build_underestimator(curve, 300.0, m);
    auto over = build_overestimator(curve, 300.0, m);
    benchmark::DoNotOptimize(under.segments().size() + over.segments().size());
  }
}
BENCHMARK(BM_BuildDomain)->Arg(2)->Arg(4)->Arg(10)->Arg(40);

Instance bench_instance(int trips) {
  SyntheticParams p;
  p.trips = trips;
  p.seed = 3;
  return generate_synthetic(p);
}

void BM_BuildGraph(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = build_graph(inst, 300);
    benchmark::DoNotOptimize(g.arcs.size());
    state.counters["arcs"] = static_cast<double>(g.arcs.size());
  }
}
BENCHMARK(BM_BuildGraph)->Arg(20)->Arg(120)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_BuildModel(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<int>(state.range(0)));
  const auto g = build_graph(inst, 300);
  ProfileCurves curves(inst);
  const auto domains = build_domains(inst, curves, 300.0, 4, EstimatorKind::kUnder);
  BuildOptions o;
  o.strengthening = state.range(1) != 0;
  for (auto _ : state) {
    auto m = build_model(g, domains, o);
    benchmark::DoNotOptimize(m.rows.size());
    state.counters["rows"] = static_cast<double>(m.rows.size());
  }
}
BENCHMARK(BM_BuildModel)->Args({20, 0})->Args({120, 0})->Args({120, 1})->Unit(benchmark::kMillisecond);

void BM_EnergyBounds(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<int>(state.range(0)));
  const auto g = build_graph(inst, 300);
  for (auto _ : state) benchmark::DoNotOptimize(compute_energy_bounds(g).unreachable.size());
}
BENCHMARK(BM_EnergyBounds)->Arg(120)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ebsched

BENCHMARK_MAIN();
