// Copyright 2026 The qwhit Authors
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

#include "qwhit/solvers.hpp"

#include <limits>
#include <string>

#include <Eigen/SparseLU>

namespace qwhit {

double residual_norm(const SparseMatrix& a, const Vector& x, const Vector& b) {
  return (a.multiply(x) - b).norm();
}

SolveReport lu_solve(const SparseMatrix& a, const Vector& b, int dense_budget) {
  if (b.size() != a.dim()) throw_invalid("lu_solve: right-hand side has wrong length");
  if (a.dim() > dense_budget) {
    throw BudgetExceeded("lu_solve: dimension " + std::to_string(a.dim()) +
                         " exceeds dense budget " + std::to_string(dense_budget));
  }
  const DenseMatrix dense = a.to_dense();
  Eigen::PartialPivLU<DenseMatrix> lu(dense);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double eps = std::numeric_limits<double>::epsilon();
  if (a.dim() > 0 && (!(pivots.minCoeff() > eps * pivots.maxCoeff()) || !(lu.rcond() > eps))) {
    throw SingularMatrix("lu_solve: matrix is singular to working precision");
  }
  SolveReport report;
  report.solution = lu.solve(b);
  report.iterations = 1;
  report.residual_norm = residual_norm(a, report.solution, b);
  report.converged = true;
  return report;
}

struct SparseLu::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
};

SparseLu::SparseLu(const SparseMatrix& a) : dim_(a.dim()), impl_(std::make_unique<Impl>()) {
  const Eigen::SparseMatrix<Complex> m = a.to_eigen();
  impl_->lu.analyzePattern(m);
  impl_->lu.factorize(m);
  if (impl_->lu.info() != Eigen::Success) {
    throw SingularMatrix("sparse LU factorization failed: " + impl_->lu.lastErrorMessage());
  }
}

SparseLu::~SparseLu() = default;
SparseLu::SparseLu(SparseLu&&) noexcept = default;
SparseLu& SparseLu::operator=(SparseLu&&) noexcept = default;

Vector SparseLu::solve(const Vector& b) const {
  if (b.size() != dim_) throw_invalid("SparseLu::solve: dimension mismatch");
  return impl_->lu.solve(b);
}

Vector SparseLu::solve_adjoint(const Vector& b) const {
  if (b.size() != dim_) throw_invalid("SparseLu::solve_adjoint: dimension mismatch");
  return impl_->lu.adjoint().solve(b);
}

SolveReport sparse_lu_solve(const SparseMatrix& a, const Vector& b) {
  if (b.size() != a.dim()) throw_invalid("sparse_lu_solve: right-hand side has wrong length");
  const SparseLu lu(a);
  SolveReport report;
  report.solution = lu.solve(b);
  report.iterations = 1;
  report.residual_norm = residual_norm(a, report.solution, b);
  report.converged = true;
  return report;
}

SolveReport cgnr_solve(const SparseMatrix& a, const Vector& b, double tol, long max_iters) {
  if (!(tol > 0.0)) throw_invalid("cgnr_solve: tol must be positive");
  if (b.size() != a.dim()) throw_invalid("cgnr_solve: right-hand side has wrong length");

  const double target = tol * b.norm();
  SolveReport report;
  report.solution = Vector::Zero(a.dim());
  Vector r = b;
  Vector z = a.adjoint_multiply(r);
  Vector p = z;
  Vector w(a.dim());
  double gamma = z.squaredNorm();
  double rnorm = r.norm();

  while (rnorm > target && report.iterations < max_iters) {
    a.multiply(p, w);
    const double wnorm2 = w.squaredNorm();
    if (wnorm2 == 0.0) break;
    const double alpha = gamma / wnorm2;
    report.solution += alpha * p;
    r -= alpha * w;
    ++report.iterations;
    rnorm = r.norm();
    if (rnorm <= target) break;
    a.adjoint_multiply(r, z);
    const double gamma_next = z.squaredNorm();
    if (gamma_next == 0.0) break;
    p = z + (gamma_next / gamma) * p;
    gamma = gamma_next;
  }

  report.residual_norm = residual_norm(a, report.solution, b);
  report.converged = report.residual_norm <= target;
  return report;
}

}  // namespace qwhit
