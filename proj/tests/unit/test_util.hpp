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


// Shared oracles for the unit tests.

#pragma once

#include <Eigen/Dense>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "maser/dynamics.hpp"
#include "maser/model.hpp"
#include "maser/quantum.hpp"

namespace maser::testing {

inline DenseMat random_matrix(Eigen::Index d, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  DenseMat m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

// Random full-rank state A A^dag / Tr.
inline DenseMat random_density(Eigen::Index d, std::mt19937& rng) {
  const DenseMat a = random_matrix(d, rng);
  DenseMat rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

inline DenseMat random_hermitian(Eigen::Index d, std::mt19937& rng) {
  const DenseMat a = random_matrix(d, rng);
  return 0.5 * (a + a.adjoint());
}

// Column-stacked superoperator from explicit Kronecker products:
// vec(A X B) = (B^T kron A) vec(X).
inline DenseMat kron_superoperator(const DenseMat& h, const std::vector<DenseMat>& cs) {
  const Eigen::Index d = h.rows();
  const DenseMat id = DenseMat::Identity(d, d);
  const cplx i(0.0, 1.0);
  DenseMat l = -i * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());
  for (const DenseMat& c : cs) {
    const DenseMat cdc = c.adjoint() * c;
    l += Eigen::kroneckerProduct(c.conjugate(), c).eval();
    l -= 0.5 * Eigen::kroneckerProduct(id, cdc).eval();
    l -= 0.5 * Eigen::kroneckerProduct(cdc.transpose(), id).eval();
  }
  return l;
}

inline Eigen::VectorXcd vec(const DenseMat& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline DenseMat unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
  return Eigen::Map<const DenseMat>(v.data(), d, d);
}

// rho(t) = unvec(expm(L t) vec(rho0)).
inline DenseMat expm_propagate(const DenseMat& l, const DenseMat& rho0, double t) {
  const DenseMat u = (l * t).exp();
  return unvec(u * vec(rho0), rho0.rows());
}

inline std::vector<DenseMat> dense_all(const std::vector<OperatorMatrix>& ops) {
  std::vector<DenseMat> out;
  for (const auto& o : ops) out.push_back(o.dense());
  return out;
}

// Small maser with randomised couplings, D <= 24.
inline SystemParams random_small_system(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.dims = {static_cast<int>(2 + rng() % 2), 2, static_cast<int>(2 + rng() % 3)};
  p.omega_ge = mhz(100.0 + 20.0 * u(rng));
  p.alpha = mhz(-20.0 - 10.0 * u(rng));
  p.omega_r = p.omega_ge + mhz(2.0 * u(rng) - 1.0);
  p.omega_a = p.omega_ge + p.alpha + mhz(2.0 * u(rng) - 1.0);
  p.omega_d = p.omega_ge + p.alpha / 2.0;
  p.drive = mhz(5.0 * u(rng));
  p.g_r = mhz(3.0 * u(rng));
  p.g_a = mhz(3.0 * u(rng));
  p.kappa_r = 0.5 + u(rng);
  p.kappa_a = 2.0 + 5.0 * u(rng);
  p.gamma = 0.1 + u(rng);
  p.gamma_phi = 0.5 * u(rng);
  return p;
}

}  // namespace maser::testing
