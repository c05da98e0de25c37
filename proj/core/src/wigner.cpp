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

#include <cmath>
#include <numbers>

#include "maser/observables.hpp"

namespace maser {

namespace {

const DensityMatrix& require_single_mode(const DensityMatrix& rho) {
  if (rho.space().num_subsystems() != 1)
    throw ShapeError("wigner: expected a single-mode state (use ptrace first)");
  return rho;
}

// Laguerre-series evaluation by upward recurrence over the Fock basis.
// wl[n] holds the |m><n| Wigner kernel for the current m.
double wigner_at(const DenseMat& rho, std::vector<cplx>& wl, double x, double p) {
  const Eigen::Index dim = rho.rows();
  const cplx a = cplx(x, p) / std::numbers::sqrt2;
  const cplx a2 = 2.0 * a;
  const cplx a2c = std::conj(a2);
  wl[0] = std::exp(-2.0 * std::norm(a)) / std::numbers::pi;
  double w = rho(0, 0).real() * wl[0].real();
  for (Eigen::Index n = 1; n < dim; ++n) {
    wl[static_cast<size_t>(n)] = a2 * wl[static_cast<size_t>(n - 1)] / std::sqrt(double(n));
    w += 2.0 * (rho(0, n) * wl[static_cast<size_t>(n)]).real();
  }
  for (Eigen::Index m = 1; m < dim; ++m) {
    const double sm = std::sqrt(double(m));
    cplx temp = wl[static_cast<size_t>(m)];
    wl[static_cast<size_t>(m)] = (a2c * temp - sm * wl[static_cast<size_t>(m - 1)]) / sm;
    w += (rho(m, m) * wl[static_cast<size_t>(m)]).real();
    for (Eigen::Index n = m + 1; n < dim; ++n) {
      const cplx next = (a2 * wl[static_cast<size_t>(n - 1)] - sm * temp) / std::sqrt(double(n));
      temp = wl[static_cast<size_t>(n)];
      wl[static_cast<size_t>(n)] = next;
      w += 2.0 * (rho(m, n) * next).real();
    }
  }
  return w;
}

double mean_photons(const DenseMat& rho) {
  double n = 0.0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) n += static_cast<double>(k) * rho(k, k).real();
  return n;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<size_t>(std::max(n, 1)));
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

double WignerGrid::integral() const {
  if (x.size() < 2 || p.size() < 2) return 0.0;
  const double dx = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  const double dp = (p.back() - p.front()) / static_cast<double>(p.size() - 1);
  return values.sum() * dx * dp;
}

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
  require_single_mode(rho);
  if (spec.nx < 2 || spec.np < 2) throw DomainError("wigner: grid needs at least 2 points per axis");
  WignerGridSpec s = spec;
  const double nbar = mean_photons(rho.mat());
  if (s.auto_expand) {
    const double extent = 1.5 * std::sqrt(2.0 * nbar + 1.0);
    if (extent > std::min({-s.x_min, s.x_max, -s.p_min, s.p_max})) {
      const double r = std::max({extent, -s.x_min, s.x_max, -s.p_min, s.p_max});
      s.x_min = s.p_min = -r;
      s.x_max = s.p_max = r;
    }
  }
  WignerGrid g;
  g.x = linspace(s.x_min, s.x_max, s.nx);
  g.p = linspace(s.p_min, s.p_max, s.np);
  g.values.resize(s.nx, s.np);
  std::vector<cplx> wl(static_cast<size_t>(rho.dim()));
  for (int i = 0; i < s.nx; ++i)
    for (int j = 0; j < s.np; ++j)
      g.values(i, j) = wigner_at(rho.mat(), wl, g.x[static_cast<size_t>(i)], g.p[static_cast<size_t>(j)]);

  // Oscillations of a state with <N> photons have local wavelength
  // pi / sqrt(2<N> + 1); require two samples per wavelength.
  const double dx = (s.x_max - s.x_min) / (s.nx - 1);
  const double dp = (s.p_max - s.p_min) / (s.np - 1);
  const double limit = std::numbers::pi / (2.0 * std::sqrt(2.0 * nbar + 1.0));
  g.undersampled = dx > limit || dp > limit;
  return g;
}

std::vector<double> wigner_points(const DensityMatrix& rho, const std::vector<double>& x,
                                  const std::vector<double>& p) {
  require_single_mode(rho);
  if (x.size() != p.size()) throw ShapeError("wigner_points: x and p differ in length");
  std::vector<cplx> wl(static_cast<size_t>(rho.dim()));
  std::vector<double> out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = wigner_at(rho.mat(), wl, x[k], p[k]);
  return out;
}

double default_radial_extent(const DensityMatrix& rho) {
  require_single_mode(rho);
  return 1.5 * std::sqrt(2.0 * mean_photons(rho.mat()) + 1.0) + 2.0;
}

RadialProfile radial_profile(const DensityMatrix& rho, double r_max, int n_radii, int n_angles) {
  require_single_mode(rho);
  if (n_radii < 2 || n_angles < 1) throw DomainError("radial_profile: need >= 2 radii and >= 1 angle");
  RadialProfile prof;
  prof.r = linspace(0.0, r_max, n_radii);
  prof.w.assign(prof.r.size(), 0.0);
  std::vector<cplx> wl(static_cast<size_t>(rho.dim()));
  for (size_t i = 0; i < prof.r.size(); ++i) {
    double acc = 0.0;
    for (int k = 0; k < n_angles; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / n_angles;
      acc += wigner_at(rho.mat(), wl, prof.r[i] * std::cos(phi), prof.r[i] * std::sin(phi));
    }
    prof.w[i] = acc / n_angles;
  }
  return prof;
}

}  // namespace maser
