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

// Derived quantities of maser states: photon statistics, transmon
// populations, emitted power and Wigner functions.

#include <optional>
#include <span>
#include <vector>

#include "maser/dynamics.hpp"
#include "maser/quantum.hpp"

namespace maser {

struct PhotonStatistics {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  std::optional<double> fano;  // undefined when mean_n == 0
  std::vector<double> fock_probs;
};

// Statistics of `subsystem` of a composite state (defaults to the reservoir;
// pass 0 for a single-mode state).
PhotonStatistics photon_statistics(const DensityMatrix& rho, int subsystem = kReservoir);
PhotonStatistics photon_statistics_from_probs(std::vector<double> probs);

struct TransmonPopulations {
  double g = 0.0;
  double e = 0.0;
  double f = 0.0;
  double rest = 0.0;  // levels above |f>
};

TransmonPopulations transmon_populations(const DensityMatrix& rho);

struct EmittedPower {
  double watts = 0.0;
  double dbm = 0.0;  // -infinity for zero power
};

// P = kappa_r * N_ss * hbar * omega_ge, with kappa_r in 1/us and omega_ge in rad/us.
EmittedPower emitted_power(double n_ss, double kappa_r, double omega_ge);

// Recorders for evolve(): p_g, p_e, p_f, p_rest, mean_n, fano (NaN if undefined).
std::vector<NamedFunctional> maser_recorders();

// ---------------------------------------------------------------------------
// Wigner function, convention W(x, p) with alpha = (x + i p)/sqrt(2),
// integral over dx dp equal to one and W_vacuum(0, 0) = 1/pi.

struct WignerGridSpec {
  double x_min = -8.0, x_max = 8.0;
  double p_min = -8.0, p_max = 8.0;
  int nx = 201, np = 201;
  // Widen the window to +-1.5 sqrt(2<N> + 1) when the state does not fit.
  bool auto_expand = true;
};

struct WignerGrid {
  std::vector<double> x;
  std::vector<double> p;
  Eigen::MatrixXd values;  // values(ix, ip)
  bool undersampled = false;
  double integral() const;  // Riemann sum
};

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec = {});

// W at arbitrary phase-space points (x[k], p[k]).
std::vector<double> wigner_points(const DensityMatrix& rho, const std::vector<double>& x,
                                  const std::vector<double>& p);

struct RadialProfile {
  std::vector<double> r;
  std::vector<double> w;  // angle-averaged W
};

RadialProfile radial_profile(const DensityMatrix& rho, double r_max, int n_radii = 400, int n_angles = 64);
// Default window for radial_profile: 1.5 sqrt(2 <N> + 1) plus margin.
double default_radial_extent(const DensityMatrix& rho);

// Strict local maxima (including an endpoint exceeding its only neighbour)
// whose value is at least rel_threshold * global maximum.
std::vector<int> significant_maxima(const std::vector<double>& values, double rel_threshold = 0.02);

// Longest run of consecutive indices strictly between `from` and `to` whose
// value lies below `level`. Returns {first, last}, or {-1, -1} when empty.
std::pair<int, int> longest_run_below(const std::vector<double>& values, int from, int to, double level);

struct FockShape {
  std::vector<int> maxima;     // significant maxima of the distribution
  int gap_first = -1;          // longest near-zero run between the first two maxima
  int gap_last = -1;
  bool bimodal = false;        // two maxima separated by a near-zero run
};

// `gap_level` is relative to the largest probability.
FockShape fock_shape(const std::vector<double>& probs, double rel_threshold = 0.02, double gap_level = 0.01);

// Mean spacing of the peaks of y(t): one peak per closed excursion above
// min + rel_threshold (max - min), refined by parabolic interpolation.
// nullopt with fewer than two peaks.
std::optional<double> oscillation_period(std::span<const double> t, std::span<const double> y,
                                         double rel_threshold = 0.5);

}  // namespace maser
