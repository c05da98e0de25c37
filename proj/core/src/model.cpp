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

#include "maser/model.hpp"

#include <cmath>

namespace maser {

std::string to_string(InteractionVariant v) {
  switch (v) {
    case InteractionVariant::kStandard:
      return "standard";
    case InteractionVariant::kUnityLowering:
      return "unity_lowering";
  }
  return "standard";
}

InteractionVariant interaction_variant_from_string(const std::string& s) {
  if (s == "standard") return InteractionVariant::kStandard;
  if (s == "unity_lowering") return InteractionVariant::kUnityLowering;
  throw ConfigError("unknown interaction variant '" + s + "'");
}

std::string to_string(DriveConvention c) { return c == DriveConvention::kFull ? "full" : "half"; }

DriveConvention drive_convention_from_string(const std::string& s) {
  if (s == "half") return DriveConvention::kHalf;
  if (s == "full") return DriveConvention::kFull;
  throw ConfigError("unknown drive convention '" + s + "'");
}

void SystemParams::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(alpha < 0.0)) fail("anharmonicity alpha must be negative");
  for (auto [name, v] : {std::pair{"kappa_r", kappa_r}, {"kappa_a", kappa_a}, {"gamma", gamma},
                         {"gamma_phi", gamma_phi}, {"g_r", g_r}, {"g_a", g_a}, {"drive", drive}}) {
    if (!std::isfinite(v) || v < 0.0) fail(std::string(name) + " must be finite and >= 0");
  }
  for (double v : {omega_ge, omega_r, omega_a, omega_d})
    if (!std::isfinite(v)) fail("frequencies must be finite");
  if (dims.transmon < 2) fail("transmon truncation must be >= 2");
  if (dims.auxiliary < 1) fail("auxiliary truncation must be >= 1");
  if (dims.reservoir < 2) fail("reservoir truncation must be >= 2");
  if (dims.auxiliary == 1 && g_a != 0.0)
    fail("auxiliary truncation 1 is only allowed with g_a = 0");
}

SystemParams ideal_config(SystemParams p) {
  p.omega_r = p.omega_ge;
  p.omega_a = p.omega_ge + p.alpha;
  p.omega_d = p.omega_ge + p.alpha / 2.0;
  return p;
}

SystemParams optimal_params(int n_reservoir) {
  SystemParams p;
  p.omega_ge = mhz(6000.0);
  p.alpha = mhz(-200.0);
  p.drive = mhz(25.0);
  p.g_r = mhz(6.5);
  p.g_a = mhz(23.5);
  p.kappa_r = 0.31;
  p.kappa_a = 138.0;
  p.gamma = 0.1;
  p.dims = {4, 2, n_reservoir};
  return ideal_config(p);
}

ModeOperators mode_operators(const SystemParams& p) {
  p.validate();
  const HilbertSpace space = p.space();
  ModeOperators ops{space, embed(space, kTransmon, annihilation(p.dims.transmon)),
                    zero_operator(space), embed(space, kReservoir, annihilation(p.dims.reservoir)),
                    zero_operator(space)};
  ops.b_res = p.variant == InteractionVariant::kUnityLowering
                  ? embed(space, kTransmon, unity_lowering(p.dims.transmon))
                  : ops.b;
  if (p.dims.auxiliary >= 2) ops.a_a = embed(space, kAuxiliary, annihilation(p.dims.auxiliary));
  return ops;
}

OperatorMatrix build_hamiltonian(const SystemParams& p) {
  const ModeOperators m = mode_operators(p);
  const HilbertSpace& space = m.space;
  const OperatorMatrix id = embed(space, kTransmon, identity(p.dims.transmon));

  const OperatorMatrix bd = m.b.adjoint();
  const OperatorMatrix nb = bd * m.b;
  const OperatorMatrix nr = m.a_r.adjoint() * m.a_r;
  const OperatorMatrix na = m.a_a.adjoint() * m.a_a;

  OperatorMatrix h = p.delta() * nb + (p.alpha / 2.0) * (nb * (nb - id));
  const double drive_factor = p.drive_convention == DriveConvention::kFull ? 1.0 : 0.5;
  h += (drive_factor * p.drive) * (m.b + bd);
  h += p.delta_r() * (nr + 0.5 * id);
  h += p.delta_a() * (na + 0.5 * id);
  h += p.g_r * (m.b_res * m.a_r.adjoint() + m.b_res.adjoint() * m.a_r);
  if (p.dims.auxiliary >= 2) h += p.g_a * (m.b * m.a_a.adjoint() + bd * m.a_a);
  return OperatorMatrix(space, h.mat().pruned());
}

std::vector<OperatorMatrix> collapse_operators(const SystemParams& p) {
  const ModeOperators m = mode_operators(p);
  std::vector<OperatorMatrix> cs;
  if (p.gamma > 0.0) cs.push_back(std::sqrt(p.gamma) * m.b);
  if (p.kappa_r > 0.0) cs.push_back(std::sqrt(p.kappa_r) * m.a_r);
  if (p.kappa_a > 0.0 && p.dims.auxiliary >= 2) cs.push_back(std::sqrt(p.kappa_a) * m.a_a);
  if (p.gamma_phi > 0.0) cs.push_back(std::sqrt(2.0 * p.gamma_phi) * (m.b.adjoint() * m.b));
  return cs;
}

SystemParams two_level_direct(SystemParams p) {
  p.dims.transmon = 2;
  p.dims.auxiliary = 1;
  p.g_a = 0.0;
  return p;
}

OperatorMatrix excitation_number(const SystemParams& p) {
  const ModeOperators m = mode_operators(p);
  return m.b.adjoint() * m.b + m.a_r.adjoint() * m.a_r + m.a_a.adjoint() * m.a_a;
}

}  // namespace maser
