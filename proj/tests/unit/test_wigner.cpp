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
#include "maser/observables.hpp"
#include "test_util.hpp"

using namespace maser;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix fock(int dim, int n) { return basis_dm(HilbertSpace{dim}, {n}); }

DensityMatrix diagonal_state(const std::vector<double>& probs) {
  DenseMat m = DenseMat::Zero(probs.size(), probs.size());
  for (size_t n = 0; n < probs.size(); ++n) m(n, n) = probs[n];
  return DensityMatrix(HilbertSpace{static_cast<int>(probs.size())}, m);
}

std::vector<double> poisson(int dim, double mean) {
  std::vector<double> p(dim);
  for (int n = 0; n < dim; ++n) p[n] = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
  return p;
}

}  // namespace

TEST_CASE("vacuum peak is 1/pi") {
  const std::vector<double> x{0.0}, p{0.0};
  CHECK(std::abs(wigner_points(fock(10, 0), x, p)[0] - 1.0 / kPi) < 1e-4);
  CHECK(std::abs(wigner_points(fock(10, 1), x, p)[0] + 1.0 / kPi) < 1e-12);
}

TEST_CASE("Fock states follow the Laguerre closed form") {
  std::vector<double> x, p;
  for (int k = 0; k < 30; ++k) {
    x.push_back(-3.0 + 0.21 * k);
    p.push_back(0.13 * k - 1.0);
  }
  for (int n : {0, 1, 2, 5, 9}) {
    const std::vector<double> w = wigner_points(fock(12, n), x, p);
    for (size_t k = 0; k < x.size(); ++k) {
      const double r2 = x[k] * x[k] + p[k] * p[k];
      const double want = (n % 2 ? -1.0 : 1.0) / kPi * std::exp(-r2) * std::laguerre(n, 2.0 * r2);
      CHECK(std::abs(w[k] - want) < 1e-12);
    }
  }
}

TEST_CASE("grid integrates to one") {
  for (int n : {0, 1, 4}) {
    const WignerGrid g = wigner(fock(8, n));
    CHECK(std::abs(g.integral() - 1.0) < 1e-2);
    CHECK_FALSE(g.undersampled);
  }
  const WignerGrid thermal = wigner(diagonal_state(poisson(40, 10.0)));
  CHECK(std::abs(thermal.integral() - 1.0) < 1e-2);
}

TEST_CASE("coherent state is a displaced Gaussian") {
  const int dim = 40;
  const cplx alpha(1.2, -0.7);
  Ket k(dim);
  for (int n = 0; n < dim; ++n)
    k(n) = std::exp(-0.5 * std::norm(alpha) - 0.5 * std::lgamma(n + 1.0)) * std::pow(alpha, n);
  const DensityMatrix rho = DensityMatrix::from_ket(HilbertSpace{dim}, k);
  const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
  std::vector<double> x, p;
  for (int i = 0; i < 20; ++i) {
    x.push_back(x0 - 1.5 + 0.15 * i);
    p.push_back(p0 + 1.0 - 0.1 * i);
  }
  const std::vector<double> w = wigner_points(rho, x, p);
  for (size_t i = 0; i < x.size(); ++i) {
    const double want = std::exp(-(x[i] - x0) * (x[i] - x0) - (p[i] - p0) * (p[i] - p0)) / kPi;
    CHECK(std::abs(w[i] - want) < 1e-10);
  }
}

TEST_CASE("marginal over p reproduces the Hermite wavefunction") {
  const int n = 3;
  const DensityMatrix rho = fock(8, n);
  const double dp = 0.01;
  for (double x : {0.0, 0.4, 1.1, 2.0}) {
    std::vector<double> xs, ps;
    for (double p = -8.0; p <= 8.0 + 1e-12; p += dp) {
      xs.push_back(x);
      ps.push_back(p);
    }
    const std::vector<double> w = wigner_points(rho, xs, ps);
    double marginal = 0.0;
    for (size_t k = 0; k < w.size(); ++k) marginal += w[k] * ((k == 0 || k + 1 == w.size()) ? 0.5 : 1.0);
    marginal *= dp;
    const double h = std::hermite(n, x);
    const double want = h * h * std::exp(-x * x) / (std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(kPi));
    CHECK(std::abs(marginal - want) < 1e-8);
  }
}

TEST_CASE("radial detector counts rings") {
  std::vector<double> ring = poisson(60, 20.0);
  const DensityMatrix single = diagonal_state(ring);
  const RadialProfile ps = radial_profile(single, default_radial_extent(single));
  CHECK(significant_maxima(ps.w).size() == 1);

  for (auto& v : ring) v *= 0.5;
  ring[0] += 0.5;
  const DensityMatrix mixed = diagonal_state(ring);
  const RadialProfile pm = radial_profile(mixed, default_radial_extent(mixed));
  const std::vector<int> maxima = significant_maxima(pm.w);
  REQUIRE(maxima.size() == 2);
  CHECK(pm.r[maxima[0]] == 0.0);
  CHECK(pm.r[maxima[1]] == doctest::Approx(std::sqrt(40.0)).epsilon(0.1));
}

TEST_CASE("wigner rejects composite states and degenerate grids") {
  const DensityMatrix composite = basis_dm(HilbertSpace{2, 3}, {0, 0});
  CHECK_THROWS_AS(wigner(composite), ShapeError);
  WignerGridSpec spec;
  spec.nx = 1;
  CHECK_THROWS_AS(wigner(fock(3, 0), spec), DomainError);
  CHECK_THROWS_AS(wigner_points(fock(3, 0), {0.0}, {0.0, 1.0}), ShapeError);
}
