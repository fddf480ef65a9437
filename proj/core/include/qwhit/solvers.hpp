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

#pragma once

#include <memory>

#include "qwhit/error.hpp"
#include "qwhit/sparse_matrix.hpp"

namespace qwhit {

struct SolveReport {
  Vector solution;
  long iterations = 0;
  /// ||A x - b||, recomputed from the returned solution.
  double residual_norm = 0.0;
  bool converged = false;
};

/// ||A x - b||
double residual_norm(const SparseMatrix& a, const Vector& x, const Vector& b);

/// Dense LU with partial pivoting. Reference solver for small systems.
/// Throws BudgetExceeded above dense_budget and SingularMatrix when the
/// smallest pivot or the reciprocal condition estimate falls below machine
/// epsilon (relative to the largest pivot).
SolveReport lu_solve(const SparseMatrix& a, const Vector& b, int dense_budget = 4096);

/// Sparse LU factorization (column approximate minimum degree ordering).
/// Reused across many right-hand sides, e.g. by inverse iteration.
class SparseLu {
 public:
  explicit SparseLu(const SparseMatrix& a);
  ~SparseLu();
  SparseLu(SparseLu&&) noexcept;
  SparseLu& operator=(SparseLu&&) noexcept;

  int dim() const { return dim_; }
  /// x with A x = b
  Vector solve(const Vector& b) const;
  /// x with A^dagger x = b
  Vector solve_adjoint(const Vector& b) const;

 private:
  struct Impl;
  int dim_;
  std::unique_ptr<Impl> impl_;
};

/// Sparse direct solve; used for the direct route once systems outgrow the
/// dense budget.
SolveReport sparse_lu_solve(const SparseMatrix& a, const Vector& b);

/// Conjugate gradient on the normal equations A^dagger A x = A^dagger b.
///
/// Works for any invertible A, Hermitian or not, and touches A only through
/// A x and A^dagger x. Stops once ||A x - b|| <= tol ||b|| or after max_iters.
SolveReport cgnr_solve(const SparseMatrix& a, const Vector& b, double tol, long max_iters);

}  // namespace qwhit
