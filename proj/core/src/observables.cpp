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

#include "maser/observables.hpp"

#include <algorithm>

#include <cmath>
#include <limits>

namespace maser {

namespace {
constexpr double kHbar = 1.054571817e-34;  // J s
}

PhotonStatistics photon_statistics_from_probs(std::vector<double> probs) {
  PhotonStatistics s;
  for (size_t n = 0; n < probs.size(); ++n) {
    s.mean_n += static_cast<double>(n) * probs[n];
    s.mean_n2 += static_cast<double>(n * n) * probs[n];
  }
  if (s.mean_n > 0.0) s.fano = std::max(0.0, (s.mean_n2 - s.mean_n * s.mean_n) / s.mean_n);
  s.fock_probs = std::move(probs);
  return s;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho, int subsystem) {
  const DensityMatrix reduced = rho.space().num_subsystems() == 1 ? rho : ptrace(rho, subsystem);
  std::vector<double> probs(static_cast<size_t>(reduced.dim()));
  for (Eigen::Index n = 0; n < reduced.dim(); ++n) probs[static_cast<size_t>(n)] = reduced.mat()(n, n).real();
  return photon_statistics_from_probs(std::move(probs));
}

TransmonPopulations transmon_populations(const DensityMatrix& rho) {
  const DensityMatrix t = ptrace(rho, kTransmon);
  TransmonPopulations pop;
  for (Eigen::Index k = 0; k < t.dim(); ++k) {
    const double v = t.mat()(k, k).real();
    if (k == 0) pop.g = v;
    else if (k == 1) pop.e = v;
    else if (k == 2) pop.f = v;
    else pop.rest += v;
  }
  return pop;
}

EmittedPower emitted_power(double n_ss, double kappa_r, double omega_ge) {
  if (n_ss < 0.0 || kappa_r < 0.0 || omega_ge < 0.0)
    throw DomainError("emitted_power: arguments must be non-negative");
  EmittedPower p;
  p.watts = (kappa_r * 1e6) * n_ss * kHbar * (omega_ge * 1e6);
  p.dbm = p.watts > 0.0 ? 10.0 * std::log10(p.watts / 1e-3) : -std::numeric_limits<double>::infinity();
  return p;
}

std::vector<NamedFunctional> maser_recorders() {
  std::vector<NamedFunctional> r;
  auto pops = [](auto field) {
    return [field](const DensityMatrix& rho) { return transmon_populations(rho).*field; };
  };
  r.emplace_back("p_g", pops(&TransmonPopulations::g));
  r.emplace_back("p_e", pops(&TransmonPopulations::e));
  r.emplace_back("p_f", pops(&TransmonPopulations::f));
  r.emplace_back("p_rest", pops(&TransmonPopulations::rest));
  r.emplace_back("mean_n", [](const DensityMatrix& rho) { return photon_statistics(rho).mean_n; });
  r.emplace_back("fano", [](const DensityMatrix& rho) {
    return photon_statistics(rho).fano.value_or(std::numeric_limits<double>::quiet_NaN());
  });
  return r;
}

std::vector<int> significant_maxima(const std::vector<double>& v, double rel_threshold) {
  std::vector<int> out;
  if (v.empty()) return out;
  double vmax = -std::numeric_limits<double>::infinity();
  for (double x : v) vmax = std::max(vmax, x);
  const double cut = rel_threshold * vmax;
  const int n = static_cast<int>(v.size());
  if (n == 1) return {0};
  for (int i = 0; i < n; ++i) {
    const double x = v[static_cast<size_t>(i)];
    const bool left = i == 0 || x > v[static_cast<size_t>(i - 1)];
    const bool right = i == n - 1 || x > v[static_cast<size_t>(i + 1)];
    if (left && right && x >= cut) out.push_back(i);
  }
  return out;
}

std::pair<int, int> longest_run_below(const std::vector<double>& v, int from, int to, double level) {
  std::pair<int, int> best{-1, -1};
  int start = -1;
  for (int i = from + 1; i < to; ++i) {
    if (v[static_cast<size_t>(i)] < level) {
      if (start < 0) start = i;
      if (best.first < 0 || i - start > best.second - best.first) best = {start, i};
    } else {
      start = -1;
    }
  }
  return best;
}

FockShape fock_shape(const std::vector<double>& probs, double rel_threshold, double gap_level) {
  FockShape shape;
  shape.maxima = significant_maxima(probs, rel_threshold);
  if (shape.maxima.size() < 2) return shape;
  double pmax = 0.0;
  for (double x : probs) pmax = std::max(pmax, x);
  const auto [first, last] = longest_run_below(probs, shape.maxima[0], shape.maxima[1], gap_level * pmax);
  shape.gap_first = first;
  shape.gap_last = last;
  shape.bimodal = first >= 0;
  return shape;
}

std::optional<double> oscillation_period(std::span<const double> t, std::span<const double> y, double rel_threshold) {
  if (t.size() != y.size()) throw ShapeError("oscillation_period: t and y differ in length");
  if (y.size() < 3) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double cut = *lo + rel_threshold * (*hi - *lo);
  // one peak per excursion above the cut, so ripples do not count twice
  std::vector<double> peaks;
  size_t i = 0;
  const size_t n = y.size();
  while (i < n && y[i] > cut) ++i;
  while (i < n) {
    while (i < n && y[i] <= cut) ++i;
    if (i >= n) break;
    size_t best = i;
    while (i < n && y[i] > cut) {
      if (y[i] > y[best]) best = i;
      ++i;
    }
    if (i >= n) break;  // excursion still open at the end
    double tp = t[best];
    if (best > 0 && best + 1 < n) {
      // vertex of the parabola through the neighbouring samples
      const double t0 = t[best - 1], t1 = t[best], t2 = t[best + 1];
      const double d1 = (y[best] - y[best - 1]) / (t1 - t0), d2 = (y[best + 1] - y[best]) / (t2 - t1);
      const double curv = (d2 - d1) / (t2 - t0);
      if (curv < 0.0) tp = 0.5 * (t0 + t1) - d1 / (2.0 * curv);
    }
    peaks.push_back(tp);
  }
  if (peaks.size() < 2) return std::nullopt;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

}  // namespace maser
