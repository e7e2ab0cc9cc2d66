// Copyright 2026 The qsector Authors
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

#include "qsector/dynamics.hpp"
#include "qsector/master.hpp"
#include "qsector/random.hpp"

namespace {

using namespace qsector;

HamiltonianSpec model() {
  HamiltonianSpec s;
  s.trunc = FockTruncation(1);
  s.coupling = 0.5;
  s.range = 1;
  s.tilt = 0.3;
  return s;
}

void BM_EmbedDense(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  RandomSource rng(1);
  const Window w = Window::chain(sites);
  const auto a = rng.quasi_local(FockTruncation(1), w.sites(), 8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(embed_dense(a, w));
}
BENCHMARK(BM_EmbedDense)->Arg(4)->Arg(6)->Arg(8);

void BM_Multiply(benchmark::State& state) {
  RandomSource rng(2);
  const auto sites = Window::chain(6).sites();
  const auto a = rng.quasi_local(FockTruncation(2), sites, static_cast<int>(state.range(0)), 3);
  const auto b = rng.quasi_local(FockTruncation(2), sites, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(4)->Arg(16);

void BM_LiouvilleApply(benchmark::State& state) {
  const HamiltonianSpec s = model();
  RandomSource rng(3);
  const auto a = rng.quasi_local(s.trunc, {{0, 0, 0}, {1, 0, 0}}, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(liouville_apply(s, a));
}
BENCHMARK(BM_LiouvilleApply);

void BM_ProjectSplit(benchmark::State& state) {
  const HamiltonianSpec s = model();
  const Window w = Window::chain(static_cast<int>(state.range(0)));
  const Superoperator l = build_superoperator(s, w);
  const ObservableBasis b = make_basis(BasisPreset::identity_densities, s, w);
  for (auto _ : state) benchmark::DoNotOptimize(project_split(l, b));
}
BENCHMARK(BM_ProjectSplit)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DispersionDissipation(benchmark::State& state) {
  const HamiltonianSpec s = model();
  const Window w = Window::chain(4);
  const ProjectedBlocks blocks =
      project_split(build_superoperator(s, w), make_basis(BasisPreset::densities, s, w));
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_dissipation(blocks, 0.05));
}
BENCHMARK(BM_DispersionDissipation);

void BM_WindowEvolve(benchmark::State& state) {
  const HamiltonianSpec s = model();
  const WindowPropagator prop(s, Window::chain(static_cast<int>(state.range(0))));
  Vector psi = Vector::Zero(prop.hamiltonian().rows());
  psi(1) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(psi, 1.5));
}
BENCHMARK(BM_WindowEvolve)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
