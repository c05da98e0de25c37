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

#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "test_util.hpp"

using namespace maser;

TEST_CASE("ideal alignment puts the drive at half the two-photon frequency") {
  const SystemParams p = optimal_params(10);
  CHECK(p.omega_r == p.omega_ge);
  CHECK(p.omega_a == doctest::Approx(p.omega_ef()));
  CHECK(2.0 * p.omega_d == doctest::Approx(p.omega_gf()));
  CHECK(p.delta() == doctest::Approx(-p.alpha / 2.0));
  CHECK(p.space().total_dim() == 4 * 2 * 10);
}

TEST_CASE("hamiltonian is hermitian and conserves excitations without drive") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    SystemParams p = testing::random_small_system(rng);
    const DenseMat h = build_hamiltonian(p).dense();
    CHECK((h - h.adjoint()).norm() < 1e-12 * (1.0 + h.norm()));
    p.drive = 0.0;
    const DenseMat h0 = build_hamiltonian(p).dense();
    const DenseMat n = excitation_number(p).dense();
    CHECK((h0 * n - n * h0).norm() < 1e-10 * (1.0 + h0.norm()));
  }
}

TEST_CASE("drive matrix element follows the configured convention") {
  SystemParams p = optimal_params(3);
  p.g_r = p.g_a = 0.0;
  const HilbertSpace s = p.space();
  const auto g = s.index_of(std::vector<int>{0, 0, 0});
  const auto e = s.index_of(std::vector<int>{1, 0, 0});
  const auto f = s.index_of(std::vector<int>{2, 0, 0});
  const DenseMat half = build_hamiltonian(p).dense();
  CHECK(std::abs(half(e, g) - 0.5 * p.drive) < 1e-12);
  CHECK(std::abs(half(f, e) - 0.5 * p.drive * std::sqrt(2.0)) < 1e-12);
  p.drive_convention = DriveConvention::kFull;
  const DenseMat full = build_hamiltonian(p).dense();
  CHECK(std::abs(full(e, g) - p.drive) < 1e-12);
  // Duffing diagonal: delta n + alpha/2 n(n-1) plus cavity zero-point terms
  const double zp = 0.5 * (p.delta_r() + p.delta_a());
  CHECK(std::abs(half(f, f).real() - (2.0 * p.delta() + p.alpha + zp)) < 1e-9);
}

TEST_CASE("unity-lowering variant changes only the reservoir coupling") {
  SystemParams p = optimal_params(4);
  const DenseMat std_h = build_hamiltonian(p).dense();
  p.variant = InteractionVariant::kUnityLowering;
  const DenseMat uni_h = build_hamiltonian(p).dense();
  const HilbertSpace s = p.space();
  const auto f0 = s.index_of(std::vector<int>{2, 0, 0});
  const auto e1 = s.index_of(std::vector<int>{1, 0, 1});
  CHECK(std::abs(std_h(e1, f0) - p.g_r * std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(uni_h(e1, f0) - p.g_r) < 1e-12);
  const auto fa = s.index_of(std::vector<int>{2, 0, 0});
  const auto ea = s.index_of(std::vector<int>{1, 1, 0});
  CHECK(std::abs(std_h(ea, fa) - uni_h(ea, fa)) < 1e-14);
}

TEST_CASE("collapse operators skip zero rates") {
  SystemParams p = optimal_params(3);
  CHECK(collapse_operators(p).size() == 3);
  p.gamma_phi = 0.2;
  CHECK(collapse_operators(p).size() == 4);
  p.gamma = p.kappa_r = p.kappa_a = p.gamma_phi = 0.0;
  CHECK(collapse_operators(p).empty());
}

TEST_CASE("two-level direct model drops the auxiliary cavity") {
  const SystemParams p = two_level_direct(optimal_params(5));
  CHECK(p.space().total_dim() == 2 * 1 * 5);
  CHECK(collapse_operators(p).size() == 2);
  CHECK_NOTHROW(build_hamiltonian(p));
}

TEST_CASE("validation rejects unphysical parameters") {
  SystemParams p = optimal_params(5);
  SystemParams q = p;
  q.alpha = mhz(10.0);
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = p;
  q.kappa_r = -1.0;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = p;
  q.dims.reservoir = 1;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = p;
  q.dims.auxiliary = 1;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = p;
  q.drive = std::nan("");
  CHECK_THROWS_AS(q.validate(), ConfigError);
  CHECK_THROWS_AS(interaction_variant_from_string("other"), ConfigError);
  CHECK_THROWS_AS(drive_convention_from_string("quarter"), ConfigError);
}
