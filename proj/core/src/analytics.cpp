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

#include "maser/analytics.hpp"

#include <cmath>

namespace maser {

namespace {

void require_nonnegative_n(int n) {
  if (n < 0) throw DomainError("photon number N must be >= 0");
}

}  // namespace

double delta_ge(int n, double g_r) {
  require_nonnegative_n(n);
  return 2.0 * g_r * std::sqrt(n + 1.0);
}

TripletSpectrum delta_gef(int n, double g_r, double g_a) {
  require_nonnegative_n(n);
  if (g_r == 0.0 && g_a == 0.0) throw DomainError("delta_gef: degenerate manifold (g_r = g_a = 0)");
  const double gr_n = g_r * std::sqrt(n + 1.0);
  const double half = std::hypot(gr_n, g_a);
  TripletSpectrum t;
  t.splitting = 2.0 * half;
  t.theta = std::atan2(g_a, gr_n);
  t.e_plus = half;
  t.e_minus = -half;
  const double s = std::sin(t.theta), c = std::cos(t.theta);
  const double r2 = std::numbers::sqrt2 / 2.0;
  t.plus = {s * r2, r2, c * r2};
  t.minus = {s * r2, -r2, c * r2};
  // The zero-energy state has no weight on the middle state |e,1,N>.
  t.zero = {-c, 0.0, s};
  return t;
}

double pump_detuning(int n, double g_r, double g_a) {
  require_nonnegative_n(n);
  return 0.5 * (delta_gef(n + 1, g_r, g_a).splitting - delta_ge(n, g_r));
}

DressedSpectrum dressed_spectrum(int n_max, double g_r, double g_a) {
  require_nonnegative_n(n_max);
  DressedSpectrum s;
  for (int n = 0; n <= n_max; ++n) {
    s.delta_ge.push_back(delta_ge(n, g_r));
    const TripletSpectrum t = delta_gef(n, g_r, g_a);
    s.delta_gef.push_back(t.splitting);
    s.mixing_angle.push_back(t.theta);
    s.pump_detuning.push_back(pump_detuning(n, g_r, g_a));
  }
  return s;
}

const char* to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::kUnderdamped:
      return "underdamped";
    case DampingRegime::kCritical:
      return "critical";
    case DampingRegime::kOverdamped:
      return "overdamped";
  }
  return "underdamped";
}

RateWithRegime kappa_a_eff(double g_a, double kappa_a) {
  if (g_a < 0.0 || kappa_a < 0.0) throw DomainError("kappa_a_eff: arguments must be >= 0");
  const double four_g = 4.0 * g_a;
  if (four_g > kappa_a) return {kappa_a / 2.0, DampingRegime::kUnderdamped};
  if (four_g == kappa_a) return {kappa_a / 2.0, DampingRegime::kCritical};
  // (kappa - sqrt(kappa^2 - 16 g^2)) / 2, rationalised to avoid cancellation.
  const double root = std::sqrt(kappa_a * kappa_a - four_g * four_g);
  return {8.0 * g_a * g_a / (kappa_a + root), DampingRegime::kOverdamped};
}

double decay_curve_rho_ff(double t, double g_a, double kappa_a) {
  if (t < 0.0) throw DomainError("decay_curve_rho_ff: t must be >= 0");
  if (g_a < 0.0 || kappa_a < 0.0) throw DomainError("decay_curve_rho_ff: arguments must be >= 0");
  // Amplitude c_f(t) obeys c_f'' + (kappa/2) c_f' + g^2 c_f = 0, c_f(0) = 1, c_f'(0) = 0.
  const double envelope = std::exp(-kappa_a * t / 2.0);
  const double disc = 16.0 * g_a * g_a - kappa_a * kappa_a;
  double amp;
  if (disc > 0.0) {
    const double gp = std::sqrt(disc) / 4.0;
    const double theta = std::atan(kappa_a / (4.0 * gp));
    amp = std::cos(gp * t - theta) / std::cos(theta);
  } else if (disc < 0.0) {
    const double gp = std::sqrt(-disc) / 4.0;
    amp = std::cosh(gp * t) + kappa_a / (4.0 * gp) * std::sinh(gp * t);
  } else {
    amp = 1.0 + kappa_a * t / 4.0;
  }
  return envelope * amp * amp;
}

double decay_curve_rho_ff_printed(double t, double g_a, double kappa_a) {
  const double disc = 16.0 * g_a * g_a - kappa_a * kappa_a;
  if (!(disc > 0.0)) throw DomainError("printed decay curve is defined for the underdamped regime only");
  const double gp = std::sqrt(disc) / 4.0;
  const double theta = std::atan(kappa_a / gp);
  const double c = std::cos(gp * t + theta) / std::cos(theta);
  return std::exp(-kappa_a * t / 2.0) * c * c;
}

double omega_2ph(double drive, double intermediate_detuning) {
  if (intermediate_detuning == 0.0)
    throw DomainError("omega_2ph: intermediate level is resonant (Delta = 0); two-photon model invalid");
  return drive * drive / (2.0 * std::abs(intermediate_detuning));
}

PumpRate effective_pump_gamma(double w2ph, double k_eff) {
  if (w2ph < 0.0 || k_eff < 0.0) throw DomainError("effective_pump_gamma: arguments must be >= 0");
  if (2.0 * w2ph >= k_eff) return {k_eff / 2.0, 2.0 * w2ph > k_eff};
  const double root = std::sqrt(k_eff * k_eff - 4.0 * w2ph * w2ph);
  return {2.0 * w2ph * w2ph / (k_eff + root), false};
}

double kappa_r_eff(double n, double kappa_r) { return n * kappa_r / 2.0; }

double n_ss_analytic(double gamma_eff, double kappa_r) {
  if (kappa_r <= 0.0) throw DomainError("n_ss_analytic: kappa_r must be > 0");
  return 2.0 * gamma_eff / kappa_r;
}

SidebandRates sideband_rates(double alpha, double g_r, double g_a) {
  SidebandRates s;
  const double shift = (delta_gef(1, g_r, g_a).splitting + delta_ge(0, g_r)) / 4.0;
  s.delta_plus = alpha / 2.0 - shift;
  s.delta_minus = alpha / 2.0 + shift;
  s.amplitude_ratio = std::abs(s.delta_minus) / std::abs(s.delta_plus);
  s.rate_ratio = s.amplitude_ratio * s.amplitude_ratio;
  return s;
}

EffectiveRates effective_rates(const SystemParams& p) {
  EffectiveRates r;
  r.omega_2ph = omega_2ph(p.drive, p.delta());
  r.kappa_a_eff = kappa_a_eff(p.g_a, p.kappa_a);
  r.gamma_eff = effective_pump_gamma(r.omega_2ph, r.kappa_a_eff.value);
  r.n_ss = n_ss_analytic(r.gamma_eff.gamma, p.kappa_r);
  r.kappa_r_eff = kappa_r_eff(r.n_ss, p.kappa_r);
  r.reservoir_strong = 4.0 * std::sqrt(r.n_ss) * p.g_r > r.n_ss * p.kappa_r;
  return r;
}

double kappa_a_eff_argmax(double g_a, double kappa_min, double kappa_max, int points) {
  if (points < 2) throw DomainError("kappa_a_eff_argmax: need >= 2 grid points");
  double best_k = kappa_min, best = -1.0;
  for (int i = 0; i < points; ++i) {
    const double k = kappa_min + (kappa_max - kappa_min) * i / (points - 1);
    const double v = kappa_a_eff(g_a, k).value;
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace maser
