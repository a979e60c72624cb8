// Copyright 2026 The ttk Authors.
//
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

#include "ttk/ttk.hpp"

using namespace ttk;

namespace {

Dims cube(Index d, Index n) { return Dims(d, n); }

std::vector<Index> flat(Index d, Index r) { return std::vector<Index>(d - 1, r); }

}  // namespace

static void BM_Matvec(benchmark::State& state) {
  const Index n = state.range(0);
  const Index r = state.range(1);
  const Problem p = convection_diffusion({4, n});
  const TTVector v = random_gaussian_tt(cube(4, n), flat(4, r), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tt_matvec(p.a, v));
}
BENCHMARK(BM_Matvec)->Args({32, 10})->Args({64, 20})->Args({128, 20})->Unit(benchmark::kMicrosecond);

static void BM_Round(benchmark::State& state) {
  const Index n = state.range(0);
  const Index r = state.range(1);
  const TTVector a = random_gaussian_tt(cube(5, n), flat(5, r), 2);
  const TTVector v = tt_add(a, tt_scale(random_gaussian_tt(cube(5, n), flat(5, r), 3), 1e-6));
  for (auto _ : state) benchmark::DoNotOptimize(tt_round(v, RoundSpec{1e-4, std::nullopt}));
}
BENCHMARK(BM_Round)->Args({32, 10})->Args({64, 20})->Args({64, 40})->Unit(benchmark::kMillisecond);

static void BM_KrApply(benchmark::State& state) {
  const Index rows = state.range(0);
  const Index r = state.range(1);
  const KhatriRaoSketch s = kr_sketch_new(cube(5, 64), rows, 4);
  const TTVector v = random_gaussian_tt(cube(5, 64), flat(5, r), 5);
  for (auto _ : state) benchmark::DoNotOptimize(kr_apply(s, v));
}
BENCHMARK(BM_KrApply)->Args({40, 10})->Args({200, 20})->Args({400, 40})->Unit(benchmark::kMicrosecond);

static void BM_SttaSketch(benchmark::State& state) {
  const Index r = state.range(0);
  const StreamFrame f = make_frame(cube(5, 64), flat(5, r), kDefaultOversampling, 6);
  const TTVector v = random_gaussian_tt(cube(5, 64), flat(5, r), 7);
  for (auto _ : state) benchmark::DoNotOptimize(stta_sketch(v, f));
}
BENCHMARK(BM_SttaSketch)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SttaRecover(benchmark::State& state) {
  const Index r = state.range(0);
  const StreamFrame f = make_frame(cube(5, 64), flat(5, r), kDefaultOversampling, 8);
  const SketchPair p = stta_sketch(random_gaussian_tt(cube(5, 64), flat(5, r), 9), f);
  for (auto _ : state) benchmark::DoNotOptimize(stta_recover(p, RoundSpec{1e-8, std::nullopt}));
}
BENCHMARK(BM_SttaRecover)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_PrecondApply(benchmark::State& state) {
  const Problem p = convection_diffusion({5, 64});
  ExpSumOptions opts;
  opts.round = RoundSpec{1e-6, Index{30}};
  const ExpSumPreconditioner pc = ExpSumPreconditioner::build(p.precond_factors, 17, opts);
  const TTVector v = random_gaussian_tt(cube(5, 64), flat(5, 10), 10);
  for (auto _ : state) benchmark::DoNotOptimize(pc.apply_inverse(v));
}
BENCHMARK(BM_PrecondApply)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
