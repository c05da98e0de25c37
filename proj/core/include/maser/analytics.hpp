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

#pragma once

// Closed-form dressed-state and effective-rate model of the maser.
//
// Coupling arguments are the bare matrix elements of the two-level reductions:
// g_r couples |e,N> to |g,N+1> with strength g_r sqrt(N+1), and g_a couples
// |f,0> to |e,1> with strength g_a. (For the Duffing transmon the model
// Hamiltonian's f-e element is sqrt(2) g_a; pass that product to compare the
// closed forms against a numerical diagonalisation.)

#include <array>
#include <vector>

#include "maser/model.hpp"

namespace maser {

// Splitting of |geN>+- : 2 g_r sqrt(N+1).
double delta_ge(int n, double g_r);

struct TripletSpectrum {
  double splitting = 0.0;  // E+ - E- = 2 sqrt((N+1) g_r^2 + g_a^2)
  double theta = 0.0;      // mixing angle, tan(theta) = g_a / (g_r sqrt(N+1)), in [0, pi/2]
  // Energies relative to the degenerate manifold.
  double e_plus = 0.0, e_zero = 0.0, e_minus = 0.0;
  // Amplitudes in the ordered basis (|f,0,N>, |e,1,N>, |g,1,N+1>).
  std::array<double, 3> plus{}, zero{}, minus{};
};

TripletSpectrum delta_gef(int n, double g_r, double g_a);

// Blockade-breaking detuning [delta_gef(N+1) - delta_ge(N)] / 2.
double pump_detuning(int n, double g_r, double g_a);

struct DressedSpectrum {
  std::vector<double> delta_ge;
  std::vector<double> delta_gef;
  std::vector<double> mixing_angle;
  std::vector<double> pump_detuning;
};

DressedSpectrum dressed_spectrum(int n_max, double g_r, double g_a);

enum class DampingRegime { kUnderdamped, kCritical, kOverdamped };
const char* to_string(DampingRegime r);

struct RateWithRegime {
  double value = 0.0;
  DampingRegime regime = DampingRegime::kUnderdamped;
};

// kappa_a/2 for 4 g_a > kappa_a, (kappa_a - sqrt(kappa_a^2 - 16 g_a^2))/2 otherwise.
RateWithRegime kappa_a_eff(double g_a, double kappa_a);

// |f> population of the f <-> (e, 1_aux) two-level reduction started in |f>,
// with the auxiliary photon decaying at kappa_a.
double decay_curve_rho_ff(double t, double g_a, double kappa_a);

// The underdamped expression in its printed form, exp(-kappa t/2)
// cos^2(g't + theta)/cos^2(theta) with tan(theta) = kappa/g'. Kept for
// comparison only; it does not solve the reduced master equation.
double decay_curve_rho_ff_printed(double t, double g_a, double kappa_a);

// Two-photon Rabi frequency Omega^2 / (2 |Delta|), Delta the detuning of the
// intermediate level. Throws DomainError for Delta == 0.
double omega_2ph(double drive, double intermediate_detuning);

struct PumpRate {
  double gamma = 0.0;
  bool strong = false;  // 2 omega_2ph > kappa_a_eff
};

PumpRate effective_pump_gamma(double omega_2ph, double kappa_a_eff);

// N kappa_r / 2.
double kappa_r_eff(double n, double kappa_r);

// 2 Gamma / kappa_r. Throws DomainError for kappa_r == 0.
double n_ss_analytic(double gamma_eff, double kappa_r);

struct SidebandRates {
  double delta_plus = 0.0;   // alpha/2 - (delta_gef(1) + delta_ge(0))/4
  double delta_minus = 0.0;  // alpha/2 + (delta_gef(1) + delta_ge(0))/4
  // Omega_2ph ratio (proportional to 1/|Delta|) and its square, "plus" over "minus".
  double amplitude_ratio = 0.0;
  double rate_ratio = 0.0;
};

SidebandRates sideband_rates(double alpha, double g_r, double g_a);

struct EffectiveRates {
  double omega_2ph = 0.0;
  RateWithRegime kappa_a_eff;
  PumpRate gamma_eff;
  double n_ss = 0.0;
  double kappa_r_eff = 0.0;  // at n_ss
  bool reservoir_strong = false;  // 4 sqrt(N) g_r > N kappa_r at n_ss
};

EffectiveRates effective_rates(const SystemParams& p);

// Location of the maximum of kappa_a_eff over kappa_a on a uniform grid.
double kappa_a_eff_argmax(double g_a, double kappa_min, double kappa_max, int points);

}  // namespace maser
