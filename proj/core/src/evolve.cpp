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

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "maser/dynamics.hpp"

namespace maser {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
 public:
  Stepper(const Liouvillian& l, const EvolveOptions& opts) : l_(l), opts_(opts) {}

  // Advances (t, y) to t_end exactly. k1 holds L(y) on entry and exit (FSAL).
  void advance(double& t, DenseMat& y, DenseMat& k1, double t_end, double& h, double h_floor,
               EvolutionResult& stats) {
    while (t < t_end) {
      if (stats.steps_accepted + stats.steps_rejected > opts_.max_steps) {
        std::ostringstream m;
        m << "evolve: exceeded " << opts_.max_steps << " steps at t=" << t << " us";
        throw StiffnessError(m.str());
      }
      const bool last = t + h >= t_end;
      const double hs = last ? t_end - t : h;

      ytmp_ = y + hs * a21 * k1;
      l_.apply(ytmp_, k2_);
      ytmp_ = y + hs * (a31 * k1 + a32 * k2_);
      l_.apply(ytmp_, k3_);
      ytmp_ = y + hs * (a41 * k1 + a42 * k2_ + a43 * k3_);
      l_.apply(ytmp_, k4_);
      ytmp_ = y + hs * (a51 * k1 + a52 * k2_ + a53 * k3_ + a54 * k4_);
      l_.apply(ytmp_, k5_);
      ytmp_ = y + hs * (a61 * k1 + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
      l_.apply(ytmp_, k6_);
      ynew_ = y + hs * (b1 * k1 + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
      l_.apply(ynew_, k7_);
      err_ = hs * (e1 * k1 + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

      double err = 0.0;
      for (Eigen::Index j = 0; j < y.cols(); ++j)
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
          const double sc =
              opts_.atol + opts_.rtol * std::max(std::abs(y(i, j)), std::abs(ynew_(i, j)));
          err = std::max(err, std::abs(err_(i, j)) / sc);
        }

      if (err <= 1.0) {
        t = last ? t_end : t + hs;
        y.swap(ynew_);
        k1.swap(k7_);
        ++stats.steps_accepted;
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (!last || hs >= h) h = hs * fac;
      } else {
        ++stats.steps_rejected;
        const double fac = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.1;
        h = hs * fac;
      }
      if (h < h_floor) {
        std::ostringstream m;
        m << "evolve: step size underflow (h=" << h << " us at t=" << t << " us, error ratio " << err
          << "); the problem is too stiff for the requested tolerances";
        throw StiffnessError(m.str());
      }
    }
  }

 private:
  const Liouvillian& l_;
  const EvolveOptions& opts_;
  DenseMat ytmp_, ynew_, err_, k2_, k3_, k4_, k5_, k6_, k7_;
};

double initial_step(const Liouvillian& l, double window, const EvolveOptions& opts) {
  if (opts.initial_step > 0.0) return opts.initial_step;
  return std::min(window > 0.0 ? window : 1.0, 0.05 / l.scale());
}

}  // namespace

EvolutionResult evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> t_grid,
                       const EvolveOptions& opts, std::span<const NamedFunctional> recorders) {
  if (!(rho0.space() == l.space())) throw ShapeError("evolve: state and Liouvillian spaces differ");
  EvolutionResult res;
  if (t_grid.empty()) return res;
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1]) throw DomainError("evolve: time grid must be non-decreasing");

  const double window = t_grid.back() - t_grid.front();
  const double h_floor = opts.min_step * std::max(window, 1.0 / l.scale());
  double h = initial_step(l, window, opts);

  auto record = [&](double t, const DenseMat& y) {
    DensityMatrix rho(l.space(), y);
    res.times.push_back(t);
    res.series["trace"].push_back(y.trace().real());
    for (const auto& [name, f] : recorders) res.series[name].push_back(f(rho));
    if (opts.keep_states) res.states.push_back(std::move(rho));
  };

  Stepper stepper(l, opts);
  double t = t_grid.front();
  DenseMat y = rho0.mat();
  DenseMat k1 = l.apply(y);
  record(t, y);
  for (size_t i = 1; i < t_grid.size(); ++i) {
    stepper.advance(t, y, k1, t_grid[i], h, h_floor, res);
    record(t, y);
  }
  return res;
}

DensityMatrix evolve_to(const Liouvillian& l, const DensityMatrix& rho0, double t0, double t1,
                        const EvolveOptions& opts) {
  EvolveOptions o = opts;
  o.keep_states = true;
  const std::array<double, 2> grid{t0, t1};
  EvolutionResult r = evolve(l, rho0, grid, o);
  return r.states.back();
}

}  // namespace maser
