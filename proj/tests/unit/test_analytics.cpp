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

#include <Eigen/Eigenvalues>
#include <cmath>

#include "maser/analytics.hpp"
#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "test_util.hpp"

using namespace maser;

TEST_CASE("single-excitation doublet matches numeric diagonalisation") {
  const double g_r = mhz(6.5);
  for (int n = 0; n <= 20; ++n) {
    Eigen::Matrix2d h;
    h << 0.0, g_r * std::sqrt(n + 1.0), g_r * std::sqrt(n + 1.0), 0.0;
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();
    const double want = ev(1) - ev(0);
    CHECK(std::abs(delta_ge(n, g_r) - want) <= 1e-9 * want);
  }
}

TEST_CASE("triplet closed forms match numeric diagonalisation") {
  for (auto [g_r, g_a] : {std::pair{mhz(6.5), mhz(23.5)}, {mhz(8.0), mhz(15.0)}, {mhz(1.0), mhz(30.0)}}) {
    for (int n = 0; n <= 20; ++n) {
      const double c = g_r * std::sqrt(n + 1.0);
      // basis {|f,0,N>, |e,1,N>, |g,1,N+1>}
      Eigen::Matrix3d h;
      h << 0.0, g_a, 0.0, g_a, 0.0, c, 0.0, c, 0.0;
      const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
      const TripletSpectrum t = delta_gef(n, g_r, g_a);
      const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
      CHECK(std::abs(t.e_minus - es.eigenvalues()(0)) <= 1e-9 * scale);
      CHECK(std::abs(t.e_zero - es.eigenvalues()(1)) <= 1e-9 * scale);
      CHECK(std::abs(t.e_plus - es.eigenvalues()(2)) <= 1e-9 * scale);
      CHECK(std::abs(t.splitting - (es.eigenvalues()(2) - es.eigenvalues()(0))) <= 1e-9 * scale);
      const std::array<std::array<double, 3>, 3> vecs{t.minus, t.zero, t.plus};
      for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3d v(vecs[k][0], vecs[k][1], vecs[k][2]);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(v.dot(es.eigenvectors().col(k))) - 1.0) < 1e-9);
      }
      CHECK(std::tan(t.theta) == doctest::Approx(g_a / c).epsilon(1e-12));
    }
  }
}

TEST_CASE("dressed spectrum tables and pump detuning") {
  const DressedSpectrum s = dressed_spectrum(20, mhz(6.5), mhz(23.5));
  REQUIRE(s.delta_ge.size() == 21);
  for (int n = 0; n < 20; ++n)
    CHECK(s.pump_detuning[n] == doctest::Approx(0.5 * (s.delta_gef[n + 1] - s.delta_ge[n])));
  CHECK_THROWS_AS(delta_ge(-1, 1.0), DomainError);
  CHECK_THROWS_AS(delta_gef(0, 0.0, 0.0), DomainError);
}

TEST_CASE("effective auxiliary decay is continuous at the critical point") {
  const double g = 2.5, k = 4.0 * g;
  const RateWithRegime crit = kappa_a_eff(g, k);
  CHECK(crit.regime == DampingRegime::kCritical);
  CHECK(crit.value == k / 2.0);
  // overdamped branch evaluated at the critical point
  CHECK((k - std::sqrt(k * k - 16.0 * g * g)) / 2.0 == crit.value);
  const RateWithRegime above = kappa_a_eff(g, std::nextafter(k, 1e9));
  const RateWithRegime below = kappa_a_eff(g, std::nextafter(k, 0.0));
  CHECK(above.regime == DampingRegime::kOverdamped);
  CHECK(below.regime == DampingRegime::kUnderdamped);
  CHECK(std::abs(above.value - crit.value) < 1e-6);
  CHECK(std::abs(below.value - crit.value) < 1e-12);
  // deep overdamped limit 4 g^2 / kappa
  CHECK(kappa_a_eff(1.0, 1e6).value == doctest::Approx(4e-6).epsilon(1e-9));
  CHECK(kappa_a_eff_argmax(g, 1.0, 40.0, 3901) == doctest::Approx(4.0 * g).epsilon(1e-3));
}

TEST_CASE("auxiliary decay curve matches a four-level master equation") {
  // basis {|f,0>, |e,1>, |e,0>, |g,0>}; H = g(|f0><e1| + h.c.), L = sqrt(kappa) |e0><e1|
  for (auto [g, kappa] : {std::pair{mhz(23.5), 138.0}, {5.0, 138.0}, {10.0, 40.0}, {mhz(3.0), 2.0}}) {
    DenseMat h = DenseMat::Zero(4, 4), c = DenseMat::Zero(4, 4);
    h(0, 1) = h(1, 0) = g;
    c(2, 1) = std::sqrt(kappa);
    const DenseMat l = testing::kron_superoperator(h, {c});
    DenseMat rho0 = DenseMat::Zero(4, 4);
    rho0(0, 0) = 1.0;
    for (double t : {0.0, 0.003, 0.01, 0.02, 0.05, 0.1, 0.3}) {
      const DenseMat rho = testing::expm_propagate(l, rho0, t);
      CHECK(std::abs(decay_curve_rho_ff(t, g, kappa) - rho(0, 0).real()) < 1e-6);
    }
  }
  CHECK(decay_curve_rho_ff_printed(0.0, mhz(23.5), 138.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(decay_curve_rho_ff_printed(0.1, 1.0, 138.0), DomainError);
  CHECK_THROWS_AS(decay_curve_rho_ff(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("two-photon Rabi frequency at the reference drive") {
  CHECK(to_mhz(omega_2ph(mhz(25.0), mhz(100.0))) == doctest::Approx(3.125).epsilon(1e-12));
  CHECK(1.0 / to_mhz(omega_2ph(mhz(25.0), mhz(100.0))) == doctest::Approx(0.32).epsilon(1e-12));
  CHECK_THROWS_AS(omega_2ph(1.0, 0.0), DomainError);
}

TEST_CASE("pump rate branches") {
  // weak pumping: (k - sqrt(k^2 - 4 w^2)) / 2
  for (double w : {0.1, 5.0, 19.6, 34.0}) {
    const double k = 69.0;
    const PumpRate r = effective_pump_gamma(w, k);
    CHECK_FALSE(r.strong);
    CHECK(r.gamma == doctest::Approx((k - std::sqrt(k * k - 4.0 * w * w)) / 2.0).epsilon(1e-12));
  }
  const PumpRate strong = effective_pump_gamma(40.0, 69.0);
  CHECK(strong.strong);
  CHECK(strong.gamma == 34.5);
  CHECK(effective_pump_gamma(34.5, 69.0).gamma == 34.5);
}

TEST_CASE("analytic chain at the reference optimum") {
  const EffectiveRates r = effective_rates(optimal_params(10));
  CHECK(r.omega_2ph == doctest::Approx(mhz(3.125)));
  CHECK(r.kappa_a_eff.regime == DampingRegime::kUnderdamped);
  CHECK(r.kappa_a_eff.value == doctest::Approx(69.0));
  const double w = mhz(3.125), k = 69.0;
  const double gamma = (k - std::sqrt(k * k - 4.0 * w * w)) / 2.0;
  CHECK(r.gamma_eff.gamma == doctest::Approx(gamma).epsilon(1e-12));
  CHECK(r.gamma_eff.gamma >= 4.5);
  CHECK(r.gamma_eff.gamma <= 6.5);
  CHECK(r.n_ss == doctest::Approx(2.0 * gamma / 0.31).epsilon(1e-12));
  CHECK(r.n_ss >= 29.0);
  CHECK(r.n_ss <= 42.0);
  CHECK(r.kappa_r_eff == doctest::Approx(r.n_ss * 0.31 / 2.0));
  CHECK(r.reservoir_strong == (4.0 * std::sqrt(r.n_ss) * mhz(6.5) > r.n_ss * 0.31));
}

TEST_CASE("sideband detunings") {
  const double alpha = mhz(-200.0), g_r = mhz(6.5), g_a = mhz(23.5);
  const SidebandRates s = sideband_rates(alpha, g_r, g_a);
  const double shift = (2.0 * std::sqrt(2.0 * g_r * g_r + g_a * g_a) + 2.0 * g_r) / 4.0;
  CHECK(s.delta_plus == doctest::Approx(alpha / 2.0 - shift));
  CHECK(s.delta_minus == doctest::Approx(alpha / 2.0 + shift));
  CHECK(s.amplitude_ratio == doctest::Approx(std::abs(s.delta_minus / s.delta_plus)));
  CHECK(s.rate_ratio == doctest::Approx(s.amplitude_ratio * s.amplitude_ratio));
  CHECK(s.amplitude_ratio < 1.0);
}
