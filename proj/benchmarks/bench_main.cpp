// Copyright 2026 The qwhit Authors
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

#include "qwhit/hhl.hpp"
#include "qwhit/kappa.hpp"
#include "qwhit/reduction.hpp"
#include "qwhit/solvers.hpp"

namespace {

using namespace qwhit;

const InitialState kStart = InitialState::basis(1, Direction::kLeft);

void BM_Iterate(benchmark::State& state) {
  const WalkSpec spec(static_cast<int>(state.range(0)), Coin::hadamard());
  for (auto _ : state) benchmark::DoNotOptimize(hitting_prob_iterative(spec, kStart).p0);
}
BENCHMARK(BM_Iterate)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_BuildSystem(benchmark::State& state) {
  const WalkSpec spec(static_cast<int>(state.range(0)), Coin::hadamard());
  for (auto _ : state) benchmark::DoNotOptimize(build_A(spec).nnz());
}
BENCHMARK(BM_BuildSystem)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const WalkSpec spec(static_cast<int>(state.range(0)), Coin::hadamard());
  const auto kind = static_cast<SolverKind>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hitting_prob_direct(spec, kStart, kind).p0);
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Solve)
    ->ArgsProduct({{10, 25, 50}, {static_cast<long>(SolverKind::kDirect), static_cast<long>(SolverKind::kCgnr)}})
    ->Unit(benchmark::kMillisecond);

void BM_SparseMatVec(benchmark::State& state) {
  const SparseMatrix a = build_A(WalkSpec(static_cast<int>(state.range(0)), Coin::hadamard()));
  const Vector x = Vector::Ones(a.dim());
  Vector y(a.dim());
  for (auto _ : state) {
    a.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.nnz()));
}
BENCHMARK(BM_SparseMatVec)->Arg(25)->Arg(100);

void BM_SigmaExtremes(benchmark::State& state) {
  const SparseMatrix a = build_A(WalkSpec(static_cast<int>(state.range(0)), Coin::hadamard()));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_extremes(a).kappa());
}
BENCHMARK(BM_SigmaExtremes)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_HhlExact(benchmark::State& state) {
  const WalkSpec spec(3, Coin::hadamard());
  hhl::HhlConfig cfg;
  cfg.clock_qubits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hhl::q_hitting_prob(spec, kStart, cfg).p_estimate);
}
BENCHMARK(BM_HhlExact)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
