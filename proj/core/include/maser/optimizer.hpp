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

// Nelder-Mead simplex minimisation and the emitted-power optimisation built
// on top of it.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maser/dynamics.hpp"
#include "maser/model.hpp"

namespace maser {

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // Stop when f_worst - f_best <= rel_tolerance * |f_best| + abs_tolerance.
  double rel_tolerance = 1e-4;
  double abs_tolerance = 0.0;
  int max_iterations = 500;
  // Initial simplex step per coordinate as a fraction of the bound range.
  double initial_step_fraction = 0.1;
  // Weight of the quadratic penalty applied outside the bounds.
  double penalty = 1e3;
  bool record_history = true;
};

struct SimplexRecord {
  int iteration = 0;
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
};

struct NelderMeadResult {
  std::vector<double> x;  // best vertex, clamped into the bounds
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> best_history;  // best value after each iteration
  std::vector<SimplexRecord> history;
};

using Objective = std::function<double(std::span<const double>)>;

// Minimises f. Throws DivergenceError when every initial vertex is non-finite.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const std::optional<Bounds>& bounds = std::nullopt,
                             const NelderMeadOptions& opts = {});

// ---------------------------------------------------------------------------

enum class FreeParam { kGr, kGa, kKappaR, kKappaA, kOmegaD };
std::string to_string(FreeParam p);
FreeParam free_param_from_string(const std::string& s);

struct FreeVariable {
  FreeParam param;
  double lower;  // internal units (rad/us or 1/us)
  double upper;
};

struct OptProblem {
  SystemParams base;
  std::vector<FreeVariable> free;
  NelderMeadOptions nelder_mead;
  SteadyStateOptions steady;
  double saturation_fraction = 0.8;

  // Throws ConfigError for inconsistent bounds.
  void validate() const;
};

SystemParams apply_free(const SystemParams& base, std::span<const FreeVariable> free,
                        std::span<const double> x);
double read_free(const SystemParams& p, FreeParam param);

struct PowerPoint {
  double watts = 0.0;
  double dbm = 0.0;
  double n_ss = 0.0;
  std::optional<double> fano;
  double residual = 0.0;
};

// Steady-state emitted power at p.
PowerPoint evaluate_power(const SystemParams& p, const SteadyStateOptions& opts = {});

struct OptResult {
  SystemParams best;
  std::vector<double> x_best;
  PowerPoint at_best;
  PowerPoint at_start;
  int iterations = 0;
  int evaluations = 0;       // objective calls, including cache hits
  int steady_state_solves = 0;
  bool converged = false;
  bool degenerate = false;   // zero power everywhere visited
  bool truncation_saturated = false;
  int suggested_n_reservoir = 0;
  std::vector<double> best_history;  // watts
  std::vector<SimplexRecord> history;
};

// Maximises emitted power over the free variables, starting from `x0` or the
// base parameter values.
OptResult optimize_power(const OptProblem& problem, std::optional<std::vector<double>> x0 = std::nullopt);

}  // namespace maser
