// Copyright 2026 The maser-sim Authors
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

#include <random>

#include "maser/dynamics.hpp"
#include "maser/model.hpp"
#include "maser/observables.hpp"

using namespace maser;

namespace {

Liouvillian maser_liouvillian(int n_r) {
  const SystemParams p = optimal_params(n_r);
  return build_liouvillian(build_hamiltonian(p), collapse_operators(p));
}

DenseMat random_state(Eigen::Index d) {
  std::mt19937 rng(1);
  std::normal_distribution<double> n;
  DenseMat a(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = cplx(n(rng), n(rng));
  DenseMat rho = a * a.adjoint();
  return rho / rho.trace();
}

void BM_liouvillian_apply(benchmark::State& state) {
  const Liouvillian l = maser_liouvillian(static_cast<int>(state.range(0)));
  const DenseMat rho = random_state(l.dim());
  DenseMat out(l.dim(), l.dim());
  for (auto _ : state) {
    l.apply(rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["D"] = static_cast<double>(l.dim());
}
BENCHMARK(BM_liouvillian_apply)->Arg(6)->Arg(15)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_steady_state(benchmark::State& state) {
  const Liouvillian l = maser_liouvillian(static_cast<int>(state.range(0)));
  SteadyStateOptions o;
  o.method = state.range(1) ? SteadyStateMethod::kIterative : SteadyStateMethod::kDirect;
  o.evolution_fallback = false;
  for (auto _ : state) {
    SteadyStateResult r = steady_state(l, o);
    benchmark::DoNotOptimize(r.residual);
  }
}
BENCHMARK(BM_steady_state)
    ->Args({6, 0})
    ->Args({6, 1})
    ->Args({10, 0})
    ->Args({10, 1})
    ->Args({25, 1})
    ->Unit(benchmark::kMillisecond);

void BM_wigner_grid(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  DenseMat m = DenseMat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = 1.0 / dim;
  const DensityMatrix rho(HilbertSpace{dim}, m);
  WignerGridSpec spec;
  spec.nx = spec.np = 81;
  for (auto _ : state) {
    WignerGrid g = wigner(rho, spec);
    benchmark::DoNotOptimize(g.values.data());
  }
}
BENCHMARK(BM_wigner_grid)->Arg(20)->Arg(45)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
