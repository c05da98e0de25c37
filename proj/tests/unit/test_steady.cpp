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

#include "maser/dynamics.hpp"
#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "maser/observables.hpp"
#include "test_util.hpp"

using namespace maser;

namespace {

// Driven damped two-level system, H = delta |e><e| + (omega/2) sigma_x.
Liouvillian bloch_liouvillian(double delta, double omega, double gamma) {
  const OperatorMatrix sm = annihilation(2);
  const OperatorMatrix h = delta * number(2) + (omega / 2.0) * (sm + sm.adjoint());
  return build_liouvillian(h, {std::sqrt(gamma) * sm});
}

DenseMat bloch_closed_form(double delta, double omega, double gamma) {
  const double ree = (omega * omega / 4.0) / (delta * delta + gamma * gamma / 4.0 + omega * omega / 2.0);
  const cplx reg = -(omega / 2.0) * (1.0 - 2.0 * ree) / cplx(delta, -gamma / 2.0);
  DenseMat rho(2, 2);
  rho << 1.0 - ree, std::conj(reg), reg, ree;
  return rho;
}

}  // namespace

TEST_CASE("two-level steady state matches the Bloch solution") {
  const std::vector<std::array<double, 3>> cases{
      {0.0, 1.0, 1.0}, {2.0, 3.0, 0.5}, {-5.0, 0.7, 2.0}, {0.3, 10.0, 0.1}, {12.0, 4.0, 1.3}};
  for (const auto& [delta, omega, gamma] : cases) {
    const Liouvillian l = bloch_liouvillian(delta, omega, gamma);
    const DenseMat want = bloch_closed_form(delta, omega, gamma);
    for (SteadyStateMethod m : {SteadyStateMethod::kDirect, SteadyStateMethod::kIterative}) {
      SteadyStateOptions o;
      o.method = m;
      o.evolution_fallback = false;
      const SteadyStateResult r = steady_state(l, o);
      CAPTURE(to_string(m));
      CHECK((r.rho.mat() - want).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(r.method == m);
      CHECK_FALSE(r.used_fallback);
    }
  }
}

TEST_CASE("direct, iterative and evolution solvers agree on small masers") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const SystemParams p = testing::random_small_system(rng);
    const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
    SteadyStateOptions o;
    o.evolution_fallback = false;
    o.method = SteadyStateMethod::kDirect;
    const SteadyStateResult direct = steady_state(l, o);
    o.method = SteadyStateMethod::kIterative;
    const SteadyStateResult iter = steady_state(l, o);
    o.method = SteadyStateMethod::kEvolution;
    const SteadyStateResult evo = steady_state(l, o);
    CHECK((direct.rho.mat() - iter.rho.mat()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((direct.rho.mat() - evo.rho.mat()).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(direct.relative_residual < 1e-10);
    CHECK(iter.iterations > 0);
    CHECK(residual_max(l, direct.rho) == doctest::Approx(direct.residual).epsilon(1e-6));
    CHECK(direct.rho.diagnose().ok);
  }
}

TEST_CASE("direct and iterative solvers agree at the reference point") {
  const SystemParams p = optimal_params(6);
  const Liouvillian l = build_liouvillian(build_hamiltonian(p), collapse_operators(p));
  SteadyStateOptions o;
  o.evolution_fallback = false;
  o.method = SteadyStateMethod::kDirect;
  const SteadyStateResult direct = steady_state(l, o);
  o.method = SteadyStateMethod::kIterative;
  const SteadyStateResult iter = steady_state(l, o);
  CHECK((direct.rho.mat() - iter.rho.mat()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(iter.relative_residual < 1e-8);
}

TEST_CASE("damped driven cavity relaxes to a coherent state") {
  const int n = 30;
  const double delta = 0.4, eps = 1.1, kappa = 1.0;
  const OperatorMatrix a = annihilation(n);
  const Liouvillian l = build_liouvillian(delta * number(n) + eps * (a + a.adjoint()), {std::sqrt(kappa) * a});
  const SteadyStateResult r = steady_state(l);
  const cplx alpha = cplx(0.0, -eps) / cplx(kappa / 2.0, delta);
  const PhotonStatistics s = photon_statistics(r.rho, 0);
  CHECK(s.mean_n == doctest::Approx(std::norm(alpha)).epsilon(1e-8));
  REQUIRE(s.fano.has_value());
  CHECK(std::abs(*s.fano - 1.0) < 1e-3);
  CHECK(std::abs(expect(a, r.rho) - alpha) < 1e-8);
}

TEST_CASE("solver failures are reported") {
  const OperatorMatrix sm = annihilation(2);
  const Liouvillian closed = build_liouvillian(number(2), {});
  CHECK_THROWS_AS(steady_state(closed), SolverError);

  // Two uncoupled qubits with decay on one only: the steady state is not unique.
  const HilbertSpace s{2, 2};
  const Liouvillian degenerate = build_liouvillian(zero_operator(s), {embed(s, 0, sm)});
  SteadyStateOptions o;
  o.method = SteadyStateMethod::kDirect;
  o.evolution_fallback = false;
  CHECK_THROWS_AS(steady_state(degenerate, o), SolverError);
}

TEST_CASE("automatic method selection follows the dimension threshold") {
  const Liouvillian l = bloch_liouvillian(1.0, 1.0, 1.0);
  SteadyStateOptions o;
  CHECK(steady_state(l, o).method == SteadyStateMethod::kDirect);
  o.direct_max_dim = 1;
  CHECK(steady_state(l, o).method == SteadyStateMethod::kIterative);
}
