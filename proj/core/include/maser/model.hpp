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

// The maser model: a Duffing-truncated transmon driven near the two-photon
// |g> <-> |f> resonance, coupled to a high-Q reservoir cavity (resonant with
// g-e) and a low-Q auxiliary cavity (resonant with e-f).
//
// Units: angular frequencies in rad/us, rates in 1/us, time in us.

#include <numbers>
#include <string>
#include <vector>

#include "maser/quantum.hpp"

namespace maser {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear frequency in MHz -> angular frequency in rad/us.
constexpr double mhz(double f) { return kTwoPi * f; }
// Angular frequency in rad/us -> linear frequency in MHz.
constexpr double to_mhz(double w) { return w / kTwoPi; }

enum class InteractionVariant {
  kStandard,
  // Reservoir interaction uses a lowering operator with unit matrix elements
  // so that vacuum Rabi splittings no longer grow with photon number.
  kUnityLowering,
};

std::string to_string(InteractionVariant v);
InteractionVariant interaction_variant_from_string(const std::string& s);

// Drive term (Omega/2)(b + b^dag) for kHalf, Omega (b + b^dag) for kFull.
enum class DriveConvention { kHalf, kFull };

std::string to_string(DriveConvention c);
DriveConvention drive_convention_from_string(const std::string& s);

struct Truncation {
  int transmon = 4;
  int auxiliary = 2;
  int reservoir = 30;

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

struct SystemParams {
  double omega_ge = mhz(6000.0);  // transmon g-e frequency
  double alpha = mhz(-200.0);     // anharmonicity, negative
  double omega_r = mhz(6000.0);   // reservoir cavity
  double omega_a = mhz(5800.0);   // auxiliary cavity
  double omega_d = mhz(5900.0);   // drive
  double drive = mhz(25.0);       // drive amplitude Omega
  double g_r = mhz(6.5);
  double g_a = mhz(23.5);
  double kappa_r = 0.31;
  double kappa_a = 138.0;
  double gamma = 0.1;
  double gamma_phi = 0.0;
  Truncation dims;
  InteractionVariant variant = InteractionVariant::kStandard;
  DriveConvention drive_convention = DriveConvention::kHalf;

  double delta() const { return omega_ge - omega_d; }
  double delta_r() const { return omega_r - omega_d; }
  double delta_a() const { return omega_a - omega_d; }
  double omega_gf() const { return 2.0 * omega_ge + alpha; }
  double omega_ef() const { return omega_ge + alpha; }

  HilbertSpace space() const {
    return HilbertSpace{dims.transmon, dims.auxiliary, dims.reservoir};
  }

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Resonant alignment: reservoir on g-e, auxiliary on e-f, drive at omega_gf/2.
// Gives delta_r = delta = -alpha/2 and delta_a = alpha/2.
SystemParams ideal_config(SystemParams p);

// Optimised device point (g_r/2pi = 6.5 MHz, g_a/2pi = 23.5 MHz,
// kappa_r = 0.31/us, kappa_a = 138/us, Omega/2pi = 25 MHz, gamma = 0.1/us).
SystemParams optimal_params(int n_reservoir = 60);

// Operators of the composite space used to assemble H.
struct ModeOperators {
  HilbertSpace space;
  OperatorMatrix b;          // transmon lowering
  OperatorMatrix b_res;      // transmon operator in the reservoir coupling
  OperatorMatrix a_r;        // reservoir annihilation
  OperatorMatrix a_a;        // auxiliary annihilation (zero when n_a == 1)
};

ModeOperators mode_operators(const SystemParams& p);

OperatorMatrix build_hamiltonian(const SystemParams& p);

// sqrt(gamma) b, sqrt(kappa_r) a_r, sqrt(kappa_a) a_a, and sqrt(2 gamma_phi) b^dag b
// when dephasing is on. Zero-rate channels are omitted.
std::vector<OperatorMatrix> collapse_operators(const SystemParams& p);

// Two-level transmon, auxiliary cavity removed: the direct-pumping null test.
SystemParams two_level_direct(SystemParams p);

// Total excitation number b^dag b + a_r^dag a_r + a_a^dag a_a.
OperatorMatrix excitation_number(const SystemParams& p);

}  // namespace maser
