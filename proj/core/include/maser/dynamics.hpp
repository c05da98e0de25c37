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

// Lindblad master-equation engine.
//
//   d rho/dt = L(rho) = -i[H, rho] + sum_k (c_k rho c_k^dag - {c_k^dag c_k, rho}/2)
//
// Vectorisation is column stacking: vec(A rho B) = (B^T kron A) vec(rho).

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maser/quantum.hpp"

namespace maser {

class Liouvillian {
 public:
  Liouvillian(OperatorMatrix hamiltonian, std::vector<OperatorMatrix> collapse);

  const HilbertSpace& space() const { return h_.space(); }
  Eigen::Index dim() const { return h_.dim(); }
  const OperatorMatrix& hamiltonian() const { return h_; }
  const std::vector<OperatorMatrix>& collapse() const { return cs_; }
  bool has_dissipation() const { return !cs_.empty(); }

  // H_eff = H - (i/2) sum c^dag c, so that L(rho) = -i(H_eff rho - rho H_eff^dag) + jumps.
  const SparseMat& effective_hamiltonian() const { return heff_; }

  // Matrix-free action on a dense D x D matrix.
  void apply(const DenseMat& rho, DenseMat& out) const;
  DenseMat apply(const DenseMat& rho) const;
  // Jump part only: sum_k c_k rho c_k^dag.
  void apply_jumps(const DenseMat& rho, DenseMat& out) const;

  // Column-stacked D^2 x D^2 sparse superoperator. Built on every call.
  SparseMat superoperator() const;

  // Infinity-norm bound on L used to scale residual tolerances.
  double scale() const { return scale_; }
  // Sum of ||c^dag c||_inf: characteristic dissipation rate.
  double dissipation_scale() const { return diss_scale_; }

 private:
  OperatorMatrix h_;
  std::vector<OperatorMatrix> cs_;
  std::vector<SparseMat> cs_adj_;
  SparseMat heff_;
  SparseMat heff_adj_;
  double scale_ = 0.0;
  double diss_scale_ = 0.0;
};

Liouvillian build_liouvillian(const OperatorMatrix& h, const std::vector<OperatorMatrix>& cs);

// ---------------------------------------------------------------------------
// Time evolution

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 = automatic
  double min_step = 1e-14;    // relative to the integration window
  long max_steps = 50'000'000;
  bool keep_states = false;
};

using StateFunctional = std::function<double(const DensityMatrix&)>;
using NamedFunctional = std::pair<std::string, StateFunctional>;

struct EvolutionResult {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> series;  // always contains "trace"
  std::vector<DensityMatrix> states;                  // filled when keep_states
  long steps_accepted = 0;
  long steps_rejected = 0;
};

// Dormand-Prince 5(4) with embedded error control. `t_grid` must be
// non-decreasing; the initial state is taken to sit at t_grid.front().
EvolutionResult evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> t_grid,
                       const EvolveOptions& opts = {}, std::span<const NamedFunctional> recorders = {});

// Propagates to time t and returns only the final state.
DensityMatrix evolve_to(const Liouvillian& l, const DensityMatrix& rho0, double t0, double t1,
                        const EvolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Steady state

enum class SteadyStateMethod { kAuto, kDirect, kIterative, kEvolution };
std::string to_string(SteadyStateMethod m);

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::kAuto;
  // kAuto picks the sparse direct factorisation up to this Hilbert dimension.
  Eigen::Index direct_max_dim = 24;
  // Target for max|L rho| / L.scale().
  double tolerance = 1e-12;
  int gmres_restart = 60;
  int max_iterations = 4000;
  // Long-time evolution when the solve is ambiguous or does not converge.
  bool evolution_fallback = true;
  double fallback_max_time = 1e5;  // us
};

struct SteadyStateResult {
  DensityMatrix rho;
  double residual = 0.0;           // max |L rho|, 1/us
  double relative_residual = 0.0;  // residual / L.scale()
  SteadyStateMethod method = SteadyStateMethod::kAuto;
  int iterations = 0;
  bool used_fallback = false;
};

// Throws SolverError (AmbiguousSteadyState for a singular factorisation) when
// no converged state is found and the fallback is disabled or also fails.
SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& opts = {});

// max |L rho|.
double residual_max(const Liouvillian& l, const DensityMatrix& rho);

}  // namespace maser
