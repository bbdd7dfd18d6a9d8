// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "ecflow/curvature.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/queries.hpp"
#include "ecflow/reflection.hpp"
#include "ecflow/shapes.hpp"

namespace {

using namespace ecf;

void BM_CurveCurvature(benchmark::State& state) {
  const auto m = shapes::ellipse(2.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_curvatures(m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CurveCurvature)->Arg(256)->Arg(4096);

void BM_SurfaceCurvature(benchmark::State& state) {
  const auto m = shapes::icosphere(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_curvatures(m));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.size()));
}
BENCHMARK(BM_SurfaceCurvature)->DenseRange(2, 4);

void BM_StepCircle(benchmark::State& state) {
  const auto m = shapes::circle(1.0, static_cast<int>(state.range(0)));
  const SpeedFunction k = speeds::mean(1);
  for (auto _ : state) benchmark::DoNotOptimize(step(m, k, 1e-4));
}
BENCHMARK(BM_StepCircle)->Arg(256)->Arg(1024);

void BM_StepIcosphere(benchmark::State& state) {
  const auto m = shapes::icosphere(1.0, static_cast<int>(state.range(0)));
  const SpeedFunction h = speeds::mean(2);
  for (auto _ : state) benchmark::DoNotOptimize(step(m, h, 1e-4));
}
BENCHMARK(BM_StepIcosphere)->DenseRange(2, 4);

void BM_StrictReflection(benchmark::State& state) {
  const auto m = shapes::ellipse(2.0, 1.0, static_cast<int>(state.range(0)));
  const Hyperplane plane(Point(1, 0, 0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(strict_reflection_check(m, plane));
}
BENCHMARK(BM_StrictReflection)->Arg(256)->Arg(1024);

void BM_ContainsPoint(benchmark::State& state) {
  const auto m = shapes::icosphere(1.0, 4);
  const Point p(0.3, -0.2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(contains_point(m, p));
}
BENCHMARK(BM_ContainsPoint);

}  // namespace

BENCHMARK_MAIN();
