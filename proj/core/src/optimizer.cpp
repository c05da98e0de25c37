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

#include "maser/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "maser/observables.hpp"

namespace maser {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::optional<Bounds>& bounds,
                             const NelderMeadOptions& opts) {
  const size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead: dimension must be >= 1");
  if (bounds && (bounds->lower.size() != n || bounds->upper.size() != n))
    throw ShapeError("nelder_mead: bounds do not match the dimension");

  NelderMeadResult res;
  auto clamp = [&](std::vector<double> x) {
    if (bounds)
      for (size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], bounds->lower[i], bounds->upper[i]);
    return x;
  };
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const std::vector<double> xc = clamp(x);
    double v = sanitize(f(xc));
    if (bounds && std::isfinite(v)) {
      double viol = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double range = bounds->upper[i] - bounds->lower[i];
        const double d = (x[i] - xc[i]) / (range > 0.0 ? range : 1.0);
        viol += d * d;
      }
      v += opts.penalty * viol * (1.0 + std::abs(v));
    }
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.push_back({x0, eval(x0)});
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    double step;
    if (bounds) {
      step = opts.initial_step_fraction * (bounds->upper[i] - bounds->lower[i]);
      if (x[i] + step > bounds->upper[i]) step = -step;
    } else {
      step = x[i] != 0.0 ? 0.05 * x[i] : 0.00025;
    }
    x[i] += step;
    simplex.push_back({x, eval(x)});
  }
  if (std::none_of(simplex.begin(), simplex.end(), [](const Vertex& v) { return std::isfinite(v.f); }))
    throw DivergenceError("nelder_mead: objective is non-finite at every initial vertex");

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto record = [&](int it) {
    res.best_history.push_back(simplex.front().f);
    if (!opts.record_history) return;
    SimplexRecord r;
    r.iteration = it;
    for (const auto& v : simplex) {
      r.vertices.push_back(clamp(v.x));
      r.values.push_back(v.f);
    }
    res.history.push_back(std::move(r));
  };
  auto converged = [&] {
    const double best = simplex.front().f, worst = simplex.back().f;
    return std::isfinite(worst) && worst - best <= opts.rel_tolerance * std::abs(best) + opts.abs_tolerance;
  };
  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    // c + t (c - w)
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = c[i] + t * (c[i] - w[i]);
    return x;
  };

  order();
  record(0);
  int it = 0;
  while (!converged() && it < opts.max_iterations) {
    ++it;
    std::vector<double> centroid(n, 0.0);
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(n);
    Vertex& worst = simplex.back();

    Vertex refl{affine(centroid, worst.x, opts.reflection), 0.0};
    refl.f = eval(refl.x);
    if (refl.f < simplex.front().f) {
      Vertex exp{affine(centroid, worst.x, opts.reflection * opts.expansion), 0.0};
      exp.f = eval(exp.x);
      worst = exp.f < refl.f ? exp : refl;
    } else if (refl.f < simplex[n - 1].f) {
      worst = refl;
    } else {
      const bool outside = refl.f < worst.f;
      Vertex con{outside ? affine(centroid, worst.x, opts.reflection * opts.contraction)
                         : affine(centroid, worst.x, -opts.contraction),
                 0.0};
      con.f = eval(con.x);
      if (con.f < (outside ? refl.f : worst.f)) {
        worst = con;
      } else {
        for (size_t k = 1; k <= n; ++k) {
          for (size_t i = 0; i < n; ++i)
            simplex[k].x[i] = simplex[0].x[i] + opts.shrink * (simplex[k].x[i] - simplex[0].x[i]);
          simplex[k].f = eval(simplex[k].x);
        }
      }
    }
    order();
    record(it);
  }
  res.iterations = it;
  res.converged = converged();
  res.x = clamp(simplex.front().x);
  res.f = simplex.front().f;
  return res;
}

// ---------------------------------------------------------------------------

std::string to_string(FreeParam p) {
  switch (p) {
    case FreeParam::kGr:
      return "g_r";
    case FreeParam::kGa:
      return "g_a";
    case FreeParam::kKappaR:
      return "kappa_r";
    case FreeParam::kKappaA:
      return "kappa_a";
    case FreeParam::kOmegaD:
      return "omega_d";
  }
  return "g_r";
}

FreeParam free_param_from_string(const std::string& s) {
  for (FreeParam p : {FreeParam::kGr, FreeParam::kGa, FreeParam::kKappaR, FreeParam::kKappaA, FreeParam::kOmegaD})
    if (to_string(p) == s) return p;
  throw ConfigError("unknown free parameter '" + s + "'");
}

void OptProblem::validate() const {
  base.validate();
  if (free.empty()) throw ConfigError("optimisation problem has no free variables");
  for (const auto& v : free) {
    if (!(v.lower < v.upper)) throw ConfigError("bounds for " + to_string(v.param) + " must satisfy lower < upper");
    if (v.param == FreeParam::kOmegaD) {
      const double centre = base.omega_gf() / 2.0, span = std::abs(base.alpha);
      if (v.lower < centre - span || v.upper > centre + span)
        throw ConfigError("omega_d bounds must lie within |alpha| of omega_gf/2");
    } else if (!(v.lower > 0.0)) {
      throw ConfigError("bounds for " + to_string(v.param) + " must be strictly positive");
    }
  }
}

double read_free(const SystemParams& p, FreeParam param) {
  switch (param) {
    case FreeParam::kGr:
      return p.g_r;
    case FreeParam::kGa:
      return p.g_a;
    case FreeParam::kKappaR:
      return p.kappa_r;
    case FreeParam::kKappaA:
      return p.kappa_a;
    case FreeParam::kOmegaD:
      return p.omega_d;
  }
  return 0.0;
}

SystemParams apply_free(const SystemParams& base, std::span<const FreeVariable> free, std::span<const double> x) {
  if (free.size() != x.size()) throw ShapeError("apply_free: size mismatch");
  SystemParams p = base;
  for (size_t i = 0; i < free.size(); ++i) {
    switch (free[i].param) {
      case FreeParam::kGr:
        p.g_r = x[i];
        break;
      case FreeParam::kGa:
        p.g_a = x[i];
        break;
      case FreeParam::kKappaR:
        p.kappa_r = x[i];
        break;
      case FreeParam::kKappaA:
        p.kappa_a = x[i];
        break;
      case FreeParam::kOmegaD:
        p.omega_d = x[i];
        break;
    }
  }
  return p;
}

PowerPoint evaluate_power(const SystemParams& p, const SteadyStateOptions& opts) {
  const Liouvillian l(build_hamiltonian(p), collapse_operators(p));
  const SteadyStateResult ss = steady_state(l, opts);
  const PhotonStatistics stats = photon_statistics(ss.rho);
  const EmittedPower pw = emitted_power(stats.mean_n, p.kappa_r, p.omega_ge);
  return {pw.watts, pw.dbm, stats.mean_n, stats.fano, ss.residual};
}

OptResult optimize_power(const OptProblem& problem, std::optional<std::vector<double>> x0) {
  problem.validate();
  const size_t n = problem.free.size();
  Bounds bounds;
  for (const auto& v : problem.free) {
    bounds.lower.push_back(v.lower);
    bounds.upper.push_back(v.upper);
  }
  std::vector<double> start(n);
  if (x0) {
    if (x0->size() != n) throw ShapeError("optimize_power: x0 does not match the free variables");
    start = *x0;
  } else {
    for (size_t i = 0; i < n; ++i) start[i] = read_free(problem.base, problem.free[i].param);
  }
  for (size_t i = 0; i < n; ++i) start[i] = std::clamp(start[i], bounds.lower[i], bounds.upper[i]);

  OptResult out;
  // Keyed on parameters quantised to 1e-6 of each bound range.
  std::map<std::vector<long long>, PowerPoint> cache;
  auto key_of = [&](std::span<const double> x) {
    std::vector<long long> k(n);
    for (size_t i = 0; i < n; ++i) k[i] = std::llround(x[i] / (1e-6 * (bounds.upper[i] - bounds.lower[i])));
    return k;
  };
  auto power_at = [&](std::span<const double> x) -> std::optional<PowerPoint> {
    const auto key = key_of(x);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    try {
      ++out.steady_state_solves;
      PowerPoint pp = evaluate_power(apply_free(problem.base, problem.free, x), problem.steady);
      cache.emplace(key, pp);
      return pp;
    } catch (const SolverError&) {
      return std::nullopt;
    }
  };

  const auto p0 = power_at(start);
  const double p_ref = p0 && p0->watts > 0.0 ? p0->watts : 1.0;
  bool any_positive = false;
  auto objective = [&](std::span<const double> x) {
    const auto pp = power_at(x);
    if (!pp) return std::numeric_limits<double>::infinity();
    if (pp->watts > 0.0) any_positive = true;
    return -pp->watts / p_ref;
  };

  NelderMeadResult nm = nelder_mead(objective, start, bounds, problem.nelder_mead);
  out.x_best = nm.x;
  out.best = apply_free(problem.base, problem.free, nm.x);
  out.at_best = power_at(nm.x).value_or(PowerPoint{});
  out.at_start = p0.value_or(PowerPoint{});
  out.iterations = nm.iterations;
  out.evaluations = nm.evaluations;
  out.converged = nm.converged;
  out.degenerate = !any_positive;
  for (double v : nm.best_history) out.best_history.push_back(-v * p_ref);
  out.history = std::move(nm.history);
  const int n_r = problem.base.dims.reservoir;
  out.truncation_saturated = out.at_best.n_ss > problem.saturation_fraction * n_r;
  out.suggested_n_reservoir =
      out.truncation_saturated
          ? std::max(n_r + 10, static_cast<int>(std::ceil(out.at_best.n_ss / (0.6 * problem.saturation_fraction))))
          : n_r;
  return out;
}

}  // namespace maser
