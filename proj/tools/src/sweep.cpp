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

#include "maser_tools/sweep.hpp"

#include <chrono>
#include <cmath>

#include "maser/errors.hpp"
#include "maser_tools/worker_pool.hpp"

namespace maser::tools {

PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts, DensityMatrix* rho_out) {
  PointResult r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Liouvillian l(build_hamiltonian(p), collapse_operators(p));
    SteadyStateResult ss = steady_state(l, opts);
    const PhotonStatistics stats = photon_statistics(ss.rho);
    r.mean_n = stats.mean_n;
    r.fano = stats.fano;
    r.fock_probs = stats.fock_probs;
    r.power_dbm = emitted_power(stats.mean_n, p.kappa_r, p.omega_ge).dbm;
    r.populations = transmon_populations(ss.rho);
    r.residual = ss.residual;
    r.relative_residual = ss.relative_residual;
    r.method = to_string(ss.method);
    r.iterations = ss.iterations;
    r.used_fallback = ss.used_fallback;
    r.ok = true;
    if (rho_out) *rho_out = std::move(ss.rho);
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts, bool keep_fock) {
  PointResult r = solve_point(p, opts, nullptr);
  if (!keep_fock) r.fock_probs.clear();
  return r;
}

std::vector<PointResult> solve_points(const std::vector<SystemParams>& points, const SteadyStateOptions& opts,
                                      int workers, bool keep_fock) {
  std::vector<PointResult> out(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) { out[i] = solve_point(points[i], opts, keep_fock); });
  return out;
}

json to_json(const PointResult& r, bool include_fock) {
  json j = {{"ok", r.ok}, {"seconds", r.seconds}};
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  j["mean_n"] = r.mean_n;
  j["fano"] = r.fano ? num(*r.fano) : json(nullptr);
  j["power_dbm"] = num(r.power_dbm);
  j["populations"] = {{"g", r.populations.g}, {"e", r.populations.e}, {"f", r.populations.f},
                      {"rest", r.populations.rest}};
  j["residual"] = r.residual;
  j["relative_residual"] = r.relative_residual;
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["used_fallback"] = r.used_fallback;
  if (include_fock) j["fock_probs"] = num_array(r.fock_probs);
  return j;
}

double max_residual(const std::vector<PointResult>& results) {
  double m = 0.0;
  for (const auto& r : results)
    if (r.ok) m = std::max(m, r.residual);
  return m;
}

int failure_count(const std::vector<PointResult>& results) {
  int n = 0;
  for (const auto& r : results) n += r.ok ? 0 : 1;
  return n;
}

int extreme_point(const std::vector<PointResult>& results) {
  int best = -1;
  for (size_t i = 0; i < results.size(); ++i)
    if (results[i].ok && (best < 0 || results[i].mean_n > results[best].mean_n)) best = static_cast<int>(i);
  return best;
}

TruncationCheck check_truncation(const SystemParams& p, double mean_n, const SteadyStateOptions& opts, int extra,
                                 double threshold, double saturation_fraction) {
  TruncationCheck c;
  c.n_reservoir = p.dims.reservoir;
  c.n_reservoir_plus = p.dims.reservoir + extra;
  c.mean_n = mean_n;
  c.saturated = mean_n > saturation_fraction * p.dims.reservoir;
  SystemParams q = p;
  q.dims.reservoir = c.n_reservoir_plus;
  const PointResult r = solve_point(q, opts, false);
  c.ok = r.ok;
  if (!r.ok) return c;
  c.mean_n_plus = r.mean_n;
  const double denom = std::max(std::abs(r.mean_n), 1e-12);
  c.relative_shift = std::abs(r.mean_n - mean_n) / denom;
  c.shifted = c.relative_shift > threshold;
  return c;
}

json to_json(const TruncationCheck& c) {
  return {{"n_reservoir", c.n_reservoir},     {"n_reservoir_plus", c.n_reservoir_plus},
          {"mean_n", c.mean_n},               {"mean_n_plus", c.mean_n_plus},
          {"relative_shift", c.relative_shift}, {"shifted", c.shifted},
          {"saturated", c.saturated},         {"rerun_ok", c.ok}};
}

}  // namespace maser::tools
