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


#include <doctest.h>

#include "maser/errors.hpp"
#include "maser/quantum.hpp"
#include "test_util.hpp"

using namespace maser;

TEST_CASE("hilbert space indexing is row major with the last subsystem fastest") {
  const HilbertSpace s{3, 2, 4};
  CHECK(s.total_dim() == 24);
  CHECK(s.num_subsystems() == 3);
  const std::vector<int> lv{2, 1, 3};
  CHECK(s.index_of(lv) == 2 * 8 + 1 * 4 + 3);
  for (Eigen::Index k = 0; k < s.total_dim(); ++k) CHECK(s.index_of(s.levels_of(k)) == k);
  CHECK_THROWS_AS(HilbertSpace({3, 0}), InvalidDimension);
  CHECK(concat(HilbertSpace{3}, HilbertSpace{2, 4}) == s);
}

TEST_CASE("ladder operators obey the truncated commutator") {
  const int n = 6;
  const DenseMat a = annihilation(n).dense();
  const DenseMat ad = creation(n).dense();
  const DenseMat comm = a * ad - ad * a;
  for (int k = 0; k < n - 1; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
  CHECK(std::abs(comm(n - 1, n - 1) - double(1 - n)) < 1e-12);
  const DenseMat num = number(n).dense();
  CHECK((num - ad * a).norm() < 1e-13);
  CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
  const DenseMat u = unity_lowering(n).dense();
  for (int k = 1; k < n; ++k) CHECK(u(k - 1, k) == cplx(1.0));
}

TEST_CASE("tensor and embed agree with explicit Kronecker products") {
  const HilbertSpace s{2, 3};
  const OperatorMatrix a = annihilation(2), b = creation(3);
  const DenseMat t = tensor({a, b}).dense();
  const DenseMat ref = Eigen::kroneckerProduct(a.dense(), b.dense()).eval();
  CHECK((t - ref).norm() < 1e-14);
  const DenseMat e = embed(s, 1, b).dense();
  const DenseMat eref = Eigen::kroneckerProduct(DenseMat::Identity(2, 2), b.dense()).eval();
  CHECK((e - eref).norm() < 1e-14);
  CHECK_THROWS_AS(embed(s, 1, creation(4)), ShapeError);
  CHECK_THROWS_AS(embed(s, 5, b), InvalidDimension);
}

TEST_CASE("operator arithmetic requires matching spaces") {
  OperatorMatrix a = annihilation(3);
  CHECK_THROWS(a += annihilation(4));
  const OperatorMatrix h = a + a.adjoint();
  CHECK((h.dense() - h.dense().adjoint()).norm() < 1e-15);
}

TEST_CASE("partial trace of a product state returns the factor") {
  std::mt19937 rng(7);
  const DenseMat r1 = testing::random_density(2, rng), r2 = testing::random_density(3, rng);
  const DensityMatrix prod = tensor(DensityMatrix(HilbertSpace{2}, r1), DensityMatrix(HilbertSpace{3}, r2));
  CHECK((ptrace(prod, 0).mat() - r1).norm() < 1e-13);
  CHECK((ptrace(prod, 1).mat() - r2).norm() < 1e-13);
  CHECK(std::abs(prod.trace() - 1.0) < 1e-13);
}

TEST_CASE("expectation values and diagnostics") {
  const HilbertSpace s{2, 4};
  const DensityMatrix rho = basis_dm(s, {1, 3});
  CHECK(std::abs(expect(embed(s, 1, number(4)), rho) - 3.0) < 1e-14);
  CHECK(std::abs(expect(embed(s, 0, number(2)), rho) - 1.0) < 1e-14);
  CHECK(rho.diagnose().ok);
  CHECK(std::abs(rho.purity() - 1.0) < 1e-14);

  DenseMat bad = rho.mat();
  bad(0, 0) = -0.5;
  bad(1, 1) = 0.5;
  const StateDiagnostics d = DensityMatrix(s, bad).diagnose();
  CHECK_FALSE(d.ok);
  CHECK(d.min_eigenvalue < -0.4);
  CHECK_THROWS_AS(DensityMatrix(s, DenseMat::Identity(3, 3)), ShapeError);
}

TEST_CASE("basis kets are normalised unit vectors") {
  const HilbertSpace s{3, 2, 5};
  const Ket k = basis_ket(s, {2, 0, 4});
  CHECK(std::abs(k.norm() - 1.0) < 1e-15);
  CHECK(k(s.index_of(std::vector<int>{2, 0, 4})) == cplx(1.0));
  CHECK_THROWS(basis_ket(s, {3, 0, 0}));
}
