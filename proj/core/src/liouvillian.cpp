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

#include <algorithm>
#include <cmath>

#include "maser/dynamics.hpp"

namespace maser {

namespace {

double inf_norm(const SparseMat& m) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it) row_sums(it.row()) += std::abs(it.value());
  return m.rows() > 0 ? row_sums.maxCoeff() : 0.0;
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseMat::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseMat::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  SparseMat out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

Liouvillian::Liouvillian(OperatorMatrix hamiltonian, std::vector<OperatorMatrix> collapse)
    : h_(std::move(hamiltonian)), cs_(std::move(collapse)) {
  const Eigen::Index d = h_.dim();
  SparseMat damping(d, d);
  for (const auto& c : cs_) {
    if (!(c.space() == h_.space())) throw ShapeError("collapse operator lives on a different space");
    cs_adj_.emplace_back(c.mat().adjoint());
    SparseMat cdc = cs_adj_.back() * c.mat();
    diss_scale_ += inf_norm(cdc);
    damping += cdc;
  }
  heff_ = h_.mat() - cplx(0.0, 0.5) * damping;
  heff_.makeCompressed();
  heff_adj_ = heff_.adjoint();
  double jumps = 0.0;
  for (const auto& c : cs_) jumps += inf_norm(c.mat()) * inf_norm(SparseMat(c.mat().adjoint()));
  scale_ = 2.0 * inf_norm(heff_) + jumps;
  if (scale_ == 0.0) scale_ = 1.0;
}

void Liouvillian::apply_jumps(const DenseMat& rho, DenseMat& out) const {
  out.setZero(rho.rows(), rho.cols());
  DenseMat tmp(rho.rows(), rho.cols());
  for (size_t k = 0; k < cs_.size(); ++k) {
    tmp.noalias() = cs_[k].mat() * rho;
    out.noalias() += tmp * cs_adj_[k];
  }
}

void Liouvillian::apply(const DenseMat& rho, DenseMat& out) const {
  apply_jumps(rho, out);
  const cplx minus_i(0.0, -1.0);
  out.noalias() += minus_i * (heff_ * rho);
  out.noalias() -= minus_i * (rho * heff_adj_);
}

DenseMat Liouvillian::apply(const DenseMat& rho) const {
  DenseMat out;
  apply(rho, out);
  return out;
}

SparseMat Liouvillian::superoperator() const {
  const Eigen::Index d = dim();
  SparseMat id(d, d);
  id.setIdentity();
  const cplx i(0.0, 1.0);
  // -i H_eff rho + i rho H_eff^dag  ->  -i (I kron H_eff) + i (H_eff^dag)^T kron I
  SparseMat heff_adj_t = heff_adj_.transpose();
  SparseMat s = -i * kron(id, heff_) + i * kron(heff_adj_t, id);
  for (size_t k = 0; k < cs_.size(); ++k) {
    // c rho c^dag -> conj(c) kron c
    SparseMat cconj = cs_[k].mat().conjugate();
    s += kron(cconj, cs_[k].mat());
  }
  s.makeCompressed();
  return s;
}

Liouvillian build_liouvillian(const OperatorMatrix& h, const std::vector<OperatorMatrix>& cs) {
  return Liouvillian(h, cs);
}

double residual_max(const Liouvillian& l, const DensityMatrix& rho) {
  if (!(rho.space() == l.space())) throw ShapeError("state and Liouvillian spaces differ");
  return l.apply(rho.mat()).cwiseAbs().maxCoeff();
}

}  // namespace maser
