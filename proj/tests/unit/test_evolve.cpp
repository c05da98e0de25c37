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


#include <doctest.h>

#include <vector>

#include "maser/dynamics.hpp"
#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "maser/observables.hpp"
#include "test_util.hpp"

using namespace maser;

TEST_CASE("integrator matches the matrix exponential on random systems") {
  std::mt19937 rng(21);
  EvolveOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  opts.keep_states = true;
  for (int trial = 0; trial < 6; ++trial) {
    const SystemParams p = testing::random_small_system(rng);
    const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
    const DenseMat oracle = testing::kron_superoperator(l.hamiltonian().dense(), testing::dense_all(l.collapse()));
    const DensityMatrix rho0(l.space(), testing::random_density(l.dim(), rng));
    const std::vector<double> grid{0.0, 0.05, 0.3, 1.0};
    const EvolutionResult r = evolve(l, rho0, grid, opts);
    REQUIRE(r.states.size() == grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
      const DenseMat want = testing::expm_propagate(oracle, rho0.mat(), grid[k]);
      CHECK((r.states[k].mat() - want).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("trajectories stay physical") {
  std::mt19937 rng(22);
  EvolveOptions opts;
  opts.keep_states = true;
  for (int trial = 0; trial < 8; ++trial) {
    const SystemParams p = testing::random_small_system(rng);
    const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
    const DensityMatrix rho0 = basis_dm(l.space(), {0, 0, 0});
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(0.05 * k);
    const EvolutionResult r = evolve(l, rho0, grid, opts);
    for (const auto& rho : r.states) {
      const StateDiagnostics d = rho.diagnose();
      CHECK(d.hermiticity_error < 1e-9);
      CHECK(d.trace_error < 1e-7);
      CHECK(d.min_eigenvalue > -1e-7);
    }
    for (double tr : r.series.at("trace")) CHECK(std::abs(tr - 1.0) < 1e-7);
  }
}

TEST_CASE("recorders are sampled on the requested grid") {
  const SystemParams p = optimal_params(3);
  const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
  const std::vector<double> grid{0.0, 0.01, 0.01, 0.02};
  const auto rec = maser_recorders();
  const EvolutionResult r = evolve(l, basis_dm(l.space(), {0, 0, 0}), grid, {}, rec);
  CHECK(r.times == grid);
  CHECK(r.series.at("p_g").size() == grid.size());
  CHECK(r.series.at("p_g").front() == doctest::Approx(1.0));
  CHECK(r.series.at("p_g")[1] == r.series.at("p_g")[2]);
  CHECK(r.steps_accepted > 0);
}

TEST_CASE("evolve_to agrees with evolve") {
  const SystemParams p = optimal_params(3);
  const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
  const DensityMatrix rho0 = basis_dm(l.space(), {0, 0, 0});
  const DensityMatrix a = evolve_to(l, rho0, 0.0, 0.1);
  EvolveOptions o;
  o.keep_states = true;
  const std::vector<double> grid{0.0, 0.1};
  const EvolutionResult r = evolve(l, rho0, grid, o);
  CHECK((a.mat() - r.states.back().mat()).norm() < 1e-14);
}

TEST_CASE("invalid inputs raise typed errors") {
  const SystemParams p = optimal_params(3);
  const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
  const DensityMatrix rho0 = basis_dm(l.space(), {0, 0, 0});
  const std::vector<double> backwards{0.0, 1.0, 0.5};
  CHECK_THROWS_AS(evolve(l, rho0, backwards), DomainError);
  const DensityMatrix other = basis_dm(HilbertSpace{2, 2, 2}, {0, 0, 0});
  const std::vector<double> grid{0.0, 1.0};
  CHECK_THROWS_AS(evolve(l, other, grid), ShapeError);
  EvolveOptions tight;
  tight.max_steps = 5;
  CHECK_THROWS_AS(evolve(l, rho0, grid, tight), StiffnessError);
  CHECK(evolve(l, rho0, std::vector<double>{}).times.empty());
}
