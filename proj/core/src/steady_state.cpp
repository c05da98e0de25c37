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
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "maser/dynamics.hpp"

namespace maser {

std::string to_string(SteadyStateMethod m) {
  switch (m) {
    case SteadyStateMethod::kAuto:
      return "auto";
    case SteadyStateMethod::kDirect:
      return "direct";
    case SteadyStateMethod::kIterative:
      return "iterative";
    case SteadyStateMethod::kEvolution:
      return "evolution";
  }
  return "auto";
}

namespace {

// Largest relative residual accepted as a steady state.
constexpr double kAcceptRelResidual = 1e-8;

using VecMap = Eigen::Map<Eigen::VectorXcd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXcd>;

cplx inner(const DenseMat& a, const DenseMat& b) {
  return ConstVecMap(a.data(), a.size()).dot(ConstVecMap(b.data(), b.size()));
}

double norm(const DenseMat& a) { return a.norm(); }

DenseMat finalize(const DenseMat& x) {
  DenseMat rho = 0.5 * (x + x.adjoint());
  const cplx tr = rho.trace();
  if (std::abs(tr) == 0.0 || !std::isfinite(std::abs(tr)))
    throw SolverError("steady state has zero or non-finite trace");
  rho /= tr.real();
  return rho;
}

// Exact inverse of the no-jump part M(X) = A X + X A^dag, A = -i H_eff, by
// eigendecomposition of A. Used as a right preconditioner; inexactness only
// costs iterations.
class SylvesterInverse {
 public:
  explicit SylvesterInverse(const Liouvillian& l) {
    const DenseMat a = cplx(0.0, -1.0) * DenseMat(l.effective_hamiltonian());
    Eigen::ComplexEigenSolver<DenseMat> es(a, true);
    if (es.info() != Eigen::Success) throw SolverError("eigendecomposition of H_eff failed");
    v_ = es.eigenvectors();
    vinv_ = v_.partialPivLu().inverse();
    vadj_ = v_.adjoint();
    vinv_adj_ = vinv_.adjoint();
    const Eigen::VectorXcd& lam = es.eigenvalues();
    const Eigen::Index d = lam.size();
    const double floor = 1e-12 * l.scale();
    inv_denom_.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        cplx den = lam(i) + std::conj(lam(j));
        if (std::abs(den) < floor) den -= floor;
        inv_denom_(i, j) = 1.0 / den;
      }
  }

  void apply(const DenseMat& y, DenseMat& x) const {
    tmp_.noalias() = vinv_ * y;
    z_.noalias() = tmp_ * vinv_adj_;
    z_.array() *= inv_denom_.array();
    tmp_.noalias() = v_ * z_;
    x.noalias() = tmp_ * vadj_;
  }

 private:
  DenseMat v_, vinv_, vadj_, vinv_adj_, inv_denom_;
  mutable DenseMat tmp_, z_;
};

struct GmresOutcome {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Right-preconditioned restarted GMRES for op(x) = b.
template <class Op, class Prec>
GmresOutcome gmres(const Op& op, const Prec& prec, const DenseMat& b, DenseMat& x, int restart,
                   int max_iterations, double tol) {
  GmresOutcome out;
  const double bnorm = std::max(norm(b), std::numeric_limits<double>::min());
  DenseMat r = b - op(x);
  double beta = norm(r);
  out.relative_residual = beta / bnorm;
  if (out.relative_residual <= tol) {
    out.converged = true;
    return out;
  }
  const int m = std::max(restart, 2);
  std::vector<DenseMat> basis(static_cast<size_t>(m + 1));
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 1, m);
  Eigen::VectorXcd g(m + 1);
  std::vector<double> cs(static_cast<size_t>(m));
  std::vector<cplx> sn(static_cast<size_t>(m));
  DenseMat z, w;

  while (out.iterations < max_iterations) {
    basis[0] = r / beta;
    g.setZero();
    g(0) = beta;
    int j = 0;
    for (; j < m && out.iterations < max_iterations; ++j) {
      ++out.iterations;
      prec.apply(basis[static_cast<size_t>(j)], z);
      w = op(z);
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const cplx h = inner(basis[static_cast<size_t>(i)], w);
          hess(i, j) += h;
          w -= h * basis[static_cast<size_t>(i)];
        }
      const double hn = norm(w);
      hess(j + 1, j) = hn;
      if (hn > 0.0) basis[static_cast<size_t>(j + 1)] = w / hn;

      for (int i = 0; i < j; ++i) {
        const cplx t = cs[static_cast<size_t>(i)] * hess(i, j) + sn[static_cast<size_t>(i)] * hess(i + 1, j);
        hess(i + 1, j) = -std::conj(sn[static_cast<size_t>(i)]) * hess(i, j) + cs[static_cast<size_t>(i)] * hess(i + 1, j);
        hess(i, j) = t;
      }
      const cplx hjj = hess(j, j);
      const double denom = std::hypot(std::abs(hjj), hn);
      if (denom == 0.0) {
        cs[static_cast<size_t>(j)] = 1.0;
        sn[static_cast<size_t>(j)] = 0.0;
      } else if (std::abs(hjj) == 0.0) {
        cs[static_cast<size_t>(j)] = 0.0;
        sn[static_cast<size_t>(j)] = 1.0;
      } else {
        const double c = std::abs(hjj) / denom;
        cs[static_cast<size_t>(j)] = c;
        sn[static_cast<size_t>(j)] = (hjj / std::abs(hjj)) * hn / denom;
      }
      hess(j, j) = cs[static_cast<size_t>(j)] * hjj + sn[static_cast<size_t>(j)] * hn;
      hess(j + 1, j) = 0.0;
      g(j + 1) = -std::conj(sn[static_cast<size_t>(j)]) * g(j);
      g(j) = cs[static_cast<size_t>(j)] * g(j);
      out.relative_residual = std::abs(g(j + 1)) / bnorm;
      if (out.relative_residual <= tol || hn == 0.0) {
        ++j;
        break;
      }
    }
    // Solve the triangular least-squares system and update x.
    Eigen::VectorXcd y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    DenseMat u = DenseMat::Zero(b.rows(), b.cols());
    for (int i = 0; i < j; ++i) u += y(i) * basis[static_cast<size_t>(i)];
    prec.apply(u, z);
    x += z;
    r = b - op(x);
    beta = norm(r);
    out.relative_residual = beta / bnorm;
    hess.setZero();
    if (out.relative_residual <= tol) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

SteadyStateResult make_result(const Liouvillian& l, DenseMat rho, SteadyStateMethod method,
                              int iterations) {
  SteadyStateResult res;
  res.rho = DensityMatrix(l.space(), std::move(rho));
  res.residual = residual_max(l, res.rho);
  res.relative_residual = res.residual / l.scale();
  res.method = method;
  res.iterations = iterations;
  return res;
}

SteadyStateResult solve_direct(const Liouvillian& l) {
  const Eigen::Index d = l.dim();
  const Eigen::Index n = d * d;
  const SparseMat s = l.superoperator();
  // Row 0 of the system is replaced by the trace functional.
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<size_t>(s.nonZeros() + d));
  for (int k = 0; k < s.outerSize(); ++k)
    for (SparseMat::InnerIterator it(s, k); it; ++it)
      if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
  for (Eigen::Index i = 0; i < d; ++i) t.emplace_back(0, i * (d + 1), 1.0);
  SparseMat a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw AmbiguousSteadyState("steady state: singular factorisation (" + lu.lastErrorMessage() +
                               "); the Liouvillian may have several steady states");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;
  Eigen::VectorXcd x = lu.solve(rhs);
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::VectorXcd r = rhs - a * x;
    x += lu.solve(r);
  }
  if (!x.allFinite())
    throw AmbiguousSteadyState("steady state: factorisation produced non-finite values; the "
                               "Liouvillian may have several steady states");
  DenseMat rho = Eigen::Map<DenseMat>(x.data(), d, d);
  SteadyStateResult res = make_result(l, finalize(rho), SteadyStateMethod::kDirect, 1);
  if (!(res.relative_residual <= kAcceptRelResidual))
    throw AmbiguousSteadyState("steady state: direct solve residual too large; the Liouvillian may "
                               "have several steady states");
  return res;
}

SteadyStateResult solve_iterative(const Liouvillian& l, const SteadyStateOptions& opts,
                                  const DenseMat* guess) {
  const Eigen::Index d = l.dim();
  // Bordered system L(x) + w Tr(x) = w with w proportional to the identity.
  // It is nonsingular exactly when the steady state is unique.
  const double wscale = std::max(l.dissipation_scale(), 1e-300) / static_cast<double>(d);
  const DenseMat b = wscale * DenseMat::Identity(d, d);
  auto op = [&](const DenseMat& x) {
    DenseMat y = l.apply(x);
    y.diagonal().array() += wscale * x.trace();
    return y;
  };
  const SylvesterInverse prec(l);

  DenseMat x;
  if (guess) {
    x = *guess;
  } else {
    x = DenseMat::Zero(d, d);
    x(0, 0) = 1.0;
  }
  int iterations = 0;
  double rel = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 3 && iterations < opts.max_iterations; ++attempt) {
    GmresOutcome g = gmres(op, prec, b, x, opts.gmres_restart, opts.max_iterations - iterations,
                           opts.tolerance);
    iterations += g.iterations;
    DenseMat rho = finalize(x);
    SteadyStateResult res = make_result(l, rho, SteadyStateMethod::kIterative, iterations);
    rel = res.relative_residual;
    if (g.converged && rel <= kAcceptRelResidual) return res;
    x = rho;
    if (g.converged) continue;  // refine from the symmetrised state
  }
  std::ostringstream m;
  m << "steady state: GMRES did not converge (" << iterations << " iterations, relative residual "
    << rel << ")";
  throw SolverError(m.str());
}

SteadyStateResult solve_by_evolution(const Liouvillian& l, const SteadyStateOptions& opts,
                                     const DenseMat* guess) {
  const Eigen::Index d = l.dim();
  DenseMat x;
  if (guess && guess->allFinite()) {
    x = finalize(*guess);
  } else {
    x = DenseMat::Identity(d, d) / static_cast<double>(d);
  }
  EvolveOptions eo;
  eo.rtol = 1e-10;
  eo.atol = 1e-13;
  double window = 10.0 / std::max(l.dissipation_scale(), 1e-12);
  double elapsed = 0.0;
  int windows = 0;
  while (elapsed < opts.fallback_max_time) {
    const double span = std::min(window, opts.fallback_max_time - elapsed);
    DensityMatrix rho = evolve_to(l, DensityMatrix(l.space(), x), 0.0, span, eo);
    elapsed += span;
    ++windows;
    x = finalize(rho.mat());
    SteadyStateResult res = make_result(l, x, SteadyStateMethod::kEvolution, windows);
    if (res.relative_residual <= kAcceptRelResidual) return res;
    window *= 2.0;
  }
  throw SolverError("steady state: long-time evolution did not reach the residual tolerance");
}

}  // namespace

SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& opts) {
  if (!l.has_dissipation())
    throw SolverError("steady state requires at least one dissipative channel");
  SteadyStateMethod method = opts.method;
  if (method == SteadyStateMethod::kAuto)
    method = l.dim() <= opts.direct_max_dim ? SteadyStateMethod::kDirect : SteadyStateMethod::kIterative;

  if (method == SteadyStateMethod::kEvolution) return solve_by_evolution(l, opts, nullptr);

  std::string failure;
  try {
    if (method == SteadyStateMethod::kDirect) return solve_direct(l);
    return solve_iterative(l, opts, nullptr);
  } catch (const SolverError& e) {
    if (!opts.evolution_fallback) throw;
    failure = e.what();
  }
  try {
    SteadyStateResult res = solve_by_evolution(l, opts, nullptr);
    res.used_fallback = true;
    return res;
  } catch (const SolverError& e) {
    throw SolverError(failure + "; fallback: " + e.what());
  }
}

}  // namespace maser
