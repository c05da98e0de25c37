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

#include "maser/quantum.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace maser {

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidDimension("HilbertSpace needs at least one subsystem");
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw InvalidDimension("subsystem dimension must be >= 1, got " + std::to_string(d));
    total_ *= d;
  }
}

int HilbertSpace::dim(int subsystem) const {
  if (subsystem < 0 || subsystem >= num_subsystems())
    throw ShapeError("subsystem index " + std::to_string(subsystem) + " out of range");
  return dims_[static_cast<size_t>(subsystem)];
}

Eigen::Index HilbertSpace::index_of(std::span<const int> levels) const {
  if (levels.size() != dims_.size()) throw ShapeError("level list does not match subsystem count");
  Eigen::Index idx = 0;
  for (size_t k = 0; k < dims_.size(); ++k) {
    if (levels[k] < 0 || levels[k] >= dims_[k])
      throw ShapeError("level " + std::to_string(levels[k]) + " out of range for subsystem " +
                       std::to_string(k));
    idx = idx * dims_[k] + levels[k];
  }
  return idx;
}

std::vector<int> HilbertSpace::levels_of(Eigen::Index index) const {
  std::vector<int> levels(dims_.size());
  for (size_t k = dims_.size(); k-- > 0;) {
    levels[k] = static_cast<int>(index % dims_[k]);
    index /= dims_[k];
  }
  return levels;
}

HilbertSpace concat(const HilbertSpace& a, const HilbertSpace& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return HilbertSpace(std::move(dims));
}

// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(HilbertSpace space, SparseMat mat)
    : space_(std::move(space)), mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) throw ShapeError("operator matrix must be square");
  if (mat_.rows() != space_.total_dim())
    throw ShapeError("operator dimension " + std::to_string(mat_.rows()) +
                     " does not match space dimension " + std::to_string(space_.total_dim()));
  mat_.makeCompressed();
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, SparseMat(mat_.adjoint()));
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (!(space_ == other.space_)) throw ShapeError("operator addition across different spaces");
  mat_ += other.mat_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  if (!(space_ == other.space_)) throw ShapeError("operator subtraction across different spaces");
  mat_ -= other.mat_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx s) {
  mat_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space() == b.space())) throw ShapeError("operator product across different spaces");
  return OperatorMatrix(a.space(), SparseMat(a.mat() * b.mat()));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, DenseMat mat)
    : space_(std::move(space)), mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) throw ShapeError("density matrix must be square");
  if (mat_.rows() != space_.total_dim()) throw ShapeError("density matrix dimension mismatch");
}

DensityMatrix DensityMatrix::from_ket(HilbertSpace space, const Ket& psi) {
  return DensityMatrix(std::move(space), psi * psi.adjoint());
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return mat_.cwiseAbs2().sum();
}

StateDiagnostics DensityMatrix::diagnose(const StateTolerance& tol) const {
  StateDiagnostics d;
  d.hermiticity_error = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(mat_.trace() - cplx(1.0));
  DenseMat herm = 0.5 * (mat_ + mat_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMat> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.ok = d.hermiticity_error <= tol.hermiticity && d.trace_error <= tol.trace &&
         d.min_eigenvalue >= tol.min_eigenvalue;
  return d;
}

// ---------------------------------------------------------------------------

namespace {

void require_ladder_dim(int dim, const char* what) {
  if (dim < 2)
    throw InvalidDimension(std::string(what) + " needs dim >= 2, got " + std::to_string(dim));
}

OperatorMatrix superdiagonal(int dim, bool sqrt_weights) {
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, sqrt_weights ? std::sqrt(double(n)) : 1.0);
  SparseMat m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return OperatorMatrix(HilbertSpace{dim}, std::move(m));
}

}  // namespace

OperatorMatrix identity(int dim) {
  if (dim < 1) throw InvalidDimension("identity needs dim >= 1");
  SparseMat m(dim, dim);
  m.setIdentity();
  return OperatorMatrix(HilbertSpace{dim}, std::move(m));
}

OperatorMatrix annihilation(int dim) {
  require_ladder_dim(dim, "annihilation");
  return superdiagonal(dim, true);
}

OperatorMatrix creation(int dim) { return annihilation(dim).adjoint(); }

OperatorMatrix number(int dim) {
  if (dim < 1) throw InvalidDimension("number operator needs dim >= 1");
  SparseMat m(dim, dim);
  for (int n = 0; n < dim; ++n) m.insert(n, n) = double(n);
  return OperatorMatrix(HilbertSpace{dim}, std::move(m));
}

OperatorMatrix unity_lowering(int dim) {
  require_ladder_dim(dim, "unity_lowering");
  return superdiagonal(dim, false);
}

OperatorMatrix zero_operator(const HilbertSpace& space) {
  return OperatorMatrix(space, SparseMat(space.total_dim(), space.total_dim()));
}

namespace {

SparseMat kron(const SparseMat& a, const SparseMat& b) {
  SparseMat out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseMat::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseMat::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

OperatorMatrix tensor(std::span<const OperatorMatrix> ops) {
  if (ops.empty()) throw ShapeError("tensor of an empty operator list");
  OperatorMatrix acc = ops[0];
  for (size_t k = 1; k < ops.size(); ++k)
    acc = OperatorMatrix(concat(acc.space(), ops[k].space()), kron(acc.mat(), ops[k].mat()));
  return acc;
}

OperatorMatrix tensor(std::initializer_list<OperatorMatrix> ops) {
  return tensor(std::span<const OperatorMatrix>(ops.begin(), ops.size()));
}

OperatorMatrix tensor(const HilbertSpace& space, std::span<const OperatorMatrix> ops) {
  if (static_cast<int>(ops.size()) != space.num_subsystems())
    throw ShapeError("tensor: expected one operator per subsystem");
  for (int k = 0; k < space.num_subsystems(); ++k)
    if (ops[static_cast<size_t>(k)].dim() != space.dim(k))
      throw ShapeError("tensor: operator " + std::to_string(k) + " has dimension " +
                       std::to_string(ops[static_cast<size_t>(k)].dim()) + ", subsystem expects " +
                       std::to_string(space.dim(k)));
  OperatorMatrix out = tensor(ops);
  return OperatorMatrix(space, out.mat());
}

OperatorMatrix embed(const HilbertSpace& space, int subsystem, const OperatorMatrix& op) {
  if (subsystem < 0 || subsystem >= space.num_subsystems())
    throw InvalidDimension("embed: subsystem index " + std::to_string(subsystem) + " out of range");
  std::vector<OperatorMatrix> ops;
  for (int k = 0; k < space.num_subsystems(); ++k)
    ops.push_back(k == subsystem ? op : identity(space.dim(k)));
  return tensor(space, ops);
}

cplx expect(const OperatorMatrix& op, const DensityMatrix& rho) {
  if (!(op.space() == rho.space())) throw ShapeError("expect: operator and state spaces differ");
  cplx acc = 0.0;
  const SparseMat& m = op.mat();
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it) acc += it.value() * rho.mat()(it.col(), it.row());
  return acc;
}

DensityMatrix ptrace(const DensityMatrix& rho, int keep) {
  const HilbertSpace& sp = rho.space();
  if (keep < 0 || keep >= sp.num_subsystems())
    throw ShapeError("ptrace: subsystem index " + std::to_string(keep) + " out of range");
  Eigen::Index before = 1, after = 1;
  for (int k = 0; k < keep; ++k) before *= sp.dim(k);
  for (int k = keep + 1; k < sp.num_subsystems(); ++k) after *= sp.dim(k);
  const int d = sp.dim(keep);
  DenseMat out = DenseMat::Zero(d, d);
  const DenseMat& m = rho.mat();
  for (Eigen::Index b = 0; b < before; ++b)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Eigen::Index row0 = (b * d + i) * after;
        const Eigen::Index col0 = (b * d + j) * after;
        cplx s = 0.0;
        for (Eigen::Index a = 0; a < after; ++a) s += m(row0 + a, col0 + a);
        out(i, j) += s;
      }
  return DensityMatrix(HilbertSpace{d}, std::move(out));
}

Ket basis_ket(const HilbertSpace& space, std::span<const int> levels) {
  Ket psi = Ket::Zero(space.total_dim());
  psi(space.index_of(levels)) = 1.0;
  return psi;
}

Ket basis_ket(const HilbertSpace& space, std::initializer_list<int> levels) {
  return basis_ket(space, std::span<const int>(levels.begin(), levels.size()));
}

DensityMatrix basis_dm(const HilbertSpace& space, std::initializer_list<int> levels) {
  return DensityMatrix::from_ket(space, basis_ket(space, levels));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  DenseMat out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
  return DensityMatrix(concat(a.space(), b.space()), std::move(out));
}

}  // namespace maser
