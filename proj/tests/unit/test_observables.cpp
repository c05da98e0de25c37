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

#include <cmath>
#include <numbers>

#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "maser/observables.hpp"
#include "test_util.hpp"

using namespace maser;

namespace {

Ket coherent_ket(int dim, cplx alpha) {
  Ket k(dim);
  double log_fact = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) log_fact += std::log(double(n));
    k(n) = std::exp(-0.5 * std::norm(alpha) - 0.5 * log_fact) * std::pow(alpha, n);
  }
  return k;
}

}  // namespace

TEST_CASE("Fock states have zero Fano factor") {
  for (int n : {1, 3, 7}) {
    const DensityMatrix rho = basis_dm(HilbertSpace{12}, {n});
    const PhotonStatistics s = photon_statistics(rho, 0);
    CHECK(s.mean_n == doctest::Approx(n));
    REQUIRE(s.fano.has_value());
    CHECK(std::abs(*s.fano) < 1e-3);
  }
  CHECK_FALSE(photon_statistics(basis_dm(HilbertSpace{5}, {0}), 0).fano.has_value());
}

TEST_CASE("coherent states have unit Fano factor") {
  for (double amp : {0.5, 1.5, 3.0}) {
    const DensityMatrix rho = DensityMatrix::from_ket(HilbertSpace{60}, coherent_ket(60, cplx(amp, 0.3)));
    const PhotonStatistics s = photon_statistics(rho, 0);
    CHECK(s.mean_n == doctest::Approx(amp * amp + 0.09).epsilon(1e-6));
    CHECK(std::abs(*s.fano - 1.0) < 1e-3);
  }
}

TEST_CASE("statistics from probabilities and of a composite state agree") {
  const HilbertSpace s{4, 2, 8};
  const DensityMatrix rho = basis_dm(s, {2, 1, 5});
  const PhotonStatistics st = photon_statistics(rho);
  CHECK(st.mean_n == doctest::Approx(5.0));
  CHECK(st.fock_probs.size() == 8);
  const PhotonStatistics pr = photon_statistics_from_probs({0.25, 0.5, 0.25});
  CHECK(pr.mean_n == doctest::Approx(1.0));
  CHECK(pr.mean_n2 == doctest::Approx(1.5));
  CHECK(*pr.fano == doctest::Approx(0.5));
  const TransmonPopulations pops = transmon_populations(rho);
  CHECK(pops.f == doctest::Approx(1.0));
  CHECK(pops.g + pops.e + pops.rest == doctest::Approx(0.0));
}

TEST_CASE("emitted power follows kappa N hbar omega") {
  const EmittedPower p = emitted_power(49.0, 0.31, mhz(6000.0));
  const double watts = 0.31e6 * 49.0 * 1.054571817e-34 * 2.0 * std::numbers::pi * 6e9;
  CHECK(p.watts == doctest::Approx(watts).epsilon(1e-12));
  CHECK(p.dbm == doctest::Approx(10.0 * std::log10(watts * 1e3)).epsilon(1e-12));
  CHECK(p.dbm == doctest::Approx(-132.2).epsilon(0.002));
  CHECK(std::isinf(emitted_power(0.0, 0.31, mhz(6000.0)).dbm));
  CHECK_THROWS_AS(emitted_power(-1.0, 0.31, 1.0), DomainError);
}

TEST_CASE("fock shape separates unimodal and bimodal distributions") {
  std::vector<double> uni(40), bi(40, 0.0);
  for (int n = 0; n < 40; ++n) uni[n] = std::exp(-0.5 * (n - 15.0) * (n - 15.0) / 9.0);
  const FockShape su = fock_shape(uni);
  CHECK(su.maxima == std::vector<int>{15});
  CHECK_FALSE(su.bimodal);

  bi[0] = 0.3;
  bi[1] = 0.1;
  for (int n = 20; n < 40; ++n) bi[n] = 0.05 * std::exp(-0.5 * (n - 30.0) * (n - 30.0) / 16.0);
  const FockShape sb = fock_shape(bi);
  REQUIRE(sb.maxima.size() == 2);
  CHECK(sb.maxima[0] == 0);
  CHECK(sb.maxima[1] == 30);
  CHECK(sb.bimodal);
  CHECK(sb.gap_first >= 2);
  CHECK(sb.gap_last <= 25);
}

TEST_CASE("oscillation period of a sampled damped cosine") {
  std::vector<double> t, y;
  for (int k = 0; k <= 2000; ++k) {
    t.push_back(k * 0.001);
    y.push_back(0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * t.back() / 0.32) * std::exp(-t.back())));
  }
  const auto period = oscillation_period(t, y);
  REQUIRE(period.has_value());
  CHECK(*period == doctest::Approx(0.32).epsilon(1e-3));
  const std::vector<double> flat(t.size(), 1.0);
  CHECK_FALSE(oscillation_period(t, flat).has_value());
}

TEST_CASE("significant maxima and gaps") {
  const std::vector<double> v{0.0, 1.0, 0.0, 0.0, 0.0, 0.5, 0.01, 0.015};
  CHECK(significant_maxima(v) == std::vector<int>{1, 5});
  CHECK(significant_maxima(v, 0.01) == std::vector<int>{1, 5, 7});
  const auto [a, b] = longest_run_below(v, 1, 5, 0.1);
  CHECK(a == 2);
  CHECK(b == 4);
}
