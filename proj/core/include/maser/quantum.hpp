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

// Composite Hilbert-space operator algebra: sparse operators with dimension
// metadata, dense density matrices, Kronecker embedding, partial trace.

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "maser/errors.hpp"

namespace maser {

using cplx = std::complex<double>;
using SparseMat = Eigen::SparseMatrix<cplx>;
using DenseMat = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

// Fixed subsystem order of the maser: every composite index is
// (transmon, auxiliary, reservoir), reservoir fastest.
enum Subsystem : int { kTransmon = 0, kAuxiliary = 1, kReservoir = 2 };

class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<int> dims);
  HilbertSpace(std::initializer_list<int> dims)
      : HilbertSpace(std::vector<int>(dims)) {}

  const std::vector<int>& dims() const { return dims_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int subsystem) const;
  Eigen::Index total_dim() const { return total_; }

  // Row-major composite index of a product basis state.
  Eigen::Index index_of(std::span<const int> levels) const;
  std::vector<int> levels_of(Eigen::Index index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<int> dims_;
  Eigen::Index total_ = 1;
};

HilbertSpace concat(const HilbertSpace& a, const HilbertSpace& b);

class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(HilbertSpace space, SparseMat mat);

  const HilbertSpace& space() const { return space_; }
  const SparseMat& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  OperatorMatrix adjoint() const;
  DenseMat dense() const { return DenseMat(mat_); }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(cplx s);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(OperatorMatrix a, cplx s) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  HilbertSpace space_;
  SparseMat mat_;
};

// Tolerances a physical state must meet.
struct StateTolerance {
  double hermiticity = 1e-9;
  double trace = 1e-7;
  double min_eigenvalue = -1e-7;
};

struct StateDiagnostics {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  bool ok = false;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(HilbertSpace space, DenseMat mat);

  static DensityMatrix from_ket(HilbertSpace space, const Ket& psi);

  const HilbertSpace& space() const { return space_; }
  const DenseMat& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  cplx trace() const { return mat_.trace(); }
  double purity() const;

  StateDiagnostics diagnose(const StateTolerance& tol = {}) const;

 private:
  HilbertSpace space_;
  DenseMat mat_;
};

// Single-mode operators.
OperatorMatrix identity(int dim);
OperatorMatrix annihilation(int dim);
OperatorMatrix creation(int dim);
OperatorMatrix number(int dim);
// Lowering operator whose superdiagonal is all ones.
OperatorMatrix unity_lowering(int dim);
OperatorMatrix zero_operator(const HilbertSpace& space);

// Kronecker product in list order; the result lives on the concatenated space.
OperatorMatrix tensor(std::span<const OperatorMatrix> ops);
OperatorMatrix tensor(std::initializer_list<OperatorMatrix> ops);
// Same, but checks that op k acts on subsystem k of `space`.
OperatorMatrix tensor(const HilbertSpace& space, std::span<const OperatorMatrix> ops);

// Embeds a single-subsystem operator at `subsystem`, identities elsewhere.
OperatorMatrix embed(const HilbertSpace& space, int subsystem, const OperatorMatrix& op);

// Tr(op * rho).
cplx expect(const OperatorMatrix& op, const DensityMatrix& rho);

// Reduced state of one subsystem.
DensityMatrix ptrace(const DensityMatrix& rho, int keep);

// Product-state helpers.
Ket basis_ket(const HilbertSpace& space, std::span<const int> levels);
Ket basis_ket(const HilbertSpace& space, std::initializer_list<int> levels);
DensityMatrix basis_dm(const HilbertSpace& space, std::initializer_list<int> levels);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace maser
