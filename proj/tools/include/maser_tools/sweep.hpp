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

// Independent steady-state solves over a list of parameter points.

#include <optional>
#include <string>
#include <vector>

#include "maser/dynamics.hpp"
#include "maser/model.hpp"
#include "maser/observables.hpp"
#include "maser_tools/output.hpp"

namespace maser::tools {

struct PointResult {
  bool ok = false;
  std::string error;
  double mean_n = 0.0;
  std::optional<double> fano;
  double power_dbm = 0.0;
  TransmonPopulations populations;
  std::vector<double> fock_probs;
  double residual = 0.0;
  double relative_residual = 0.0;
  std::string method;
  int iterations = 0;
  bool used_fallback = false;
  double seconds = 0.0;
};

// Never throws for solver failures; they are recorded in the result.
PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts, bool keep_fock = true);

// Keeps the steady state as well, for Wigner output.
PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts, DensityMatrix* rho_out);

std::vector<PointResult> solve_points(const std::vector<SystemParams>& points, const SteadyStateOptions& opts,
                                      int workers, bool keep_fock = true);

json to_json(const PointResult& r, bool include_fock = false);

// Largest residual over successful points; 0 when none succeeded.
double max_residual(const std::vector<PointResult>& results);
int failure_count(const std::vector<PointResult>& results);

struct TruncationCheck {
  int n_reservoir = 0;
  int n_reservoir_plus = 0;
  double mean_n = 0.0;
  double mean_n_plus = 0.0;
  double relative_shift = 0.0;
  bool shifted = false;    // relative shift above the threshold
  bool saturated = false;  // <N> above saturation_fraction * n_r
  bool ok = true;          // re-run succeeded
};

// Re-solves p with `extra` more reservoir levels and compares <N>.
TruncationCheck check_truncation(const SystemParams& p, double mean_n, const SteadyStateOptions& opts,
                                 int extra = 10, double threshold = 0.02, double saturation_fraction = 0.8);

json to_json(const TruncationCheck& c);

// Index of the successful point with the largest <N>, or -1.
int extreme_point(const std::vector<PointResult>& results);

}  // namespace maser::tools
