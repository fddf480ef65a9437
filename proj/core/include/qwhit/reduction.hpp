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

#include <string_view>

#include "qwhit/spectral.hpp"
#include "qwhit/sparse_matrix.hpp"
#include "qwhit/walk.hpp"

namespace qwhit {

// Linear-system form of the hitting probability at position 0:
//
//   p0 = y^dagger (I - M (x) M*)^{-1} b,
//   b  = psi0 (x) psi0*,          y = |1,top> (x) |1,top*>,
//
// where M is the walk operator restricted to the transient positions 1..n-1.
// All vectors use the transient layout tidx(k, d) = 2(k-1) + d, and the
// Kronecker product puts the first factor in the major position:
// (u (x) v)[i * D + j] = u[i] v[j] with D = 2(n-1).

/// Default ceiling on N = (2n-2)^2 for build_A.
inline constexpr long long kDefaultSystemBudget = 1LL << 24;

/// Transient walk matrix, dimension 2(n-1); zero for n = 2.
SparseMatrix build_M(const WalkSpec& spec);

/// M (x) M*, dimension (2n-2)^2.
SparseMatrix build_transient_superop(const WalkSpec& spec);

/// A = I - M (x) M*. At most five nonzeros per row.
SparseMatrix build_A(const WalkSpec& spec, long long budget = kDefaultSystemBudget);

/// psi (x) psi* for transient amplitudes psi.
Vector build_b(const Vector& psi);
Vector build_b(const WalkSpec& spec, const InitialState& init);

/// y = |1> (x) |top> (x) |1> (x) |top*>. p0 is y^dagger v.
Vector build_probe(const WalkSpec& spec);

enum class SolverKind { kDirect, kCgnr, kNeumann };

std::string_view to_string(SolverKind kind);
/// Accepts "direct", "cgnr", "neumann".
SolverKind parse_solver_kind(std::string_view name);

struct ReductionOptions {
  /// Relative residual target for the iterative solvers.
  double tol = 1e-12;
  long max_iters = 2'000'000;
  /// The direct route uses dense LU up to this dimension, sparse LU above.
  /// Dense LU at N = 4096 already costs tens of seconds.
  int dense_budget = 256;
  long long system_budget = kDefaultSystemBudget;
};

struct ReductionResult {
  double p0 = 0.0;
  /// 1 - p0: mass not absorbed at 0 ends at n.
  double pn = 1.0;
  SolverKind solver = SolverKind::kDirect;
  long iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Solves A v = b with the chosen solver and returns p0 = Re(y^dagger v).
/// Throws InternalError when a converged solve leaves |Im(y^dagger v)| >= 1e-8
/// or p0 outside [0, 1] by more than 1e-8.
ReductionResult hitting_prob_direct(const WalkSpec& spec, const InitialState& init,
                                    SolverKind solver, const ReductionOptions& options = {});

/// Same, on prebuilt operands. Lets sweeps reuse A across initial states.
ReductionResult hitting_prob_from_system(const SparseMatrix& a, const Vector& b, const Vector& y,
                                         SolverKind solver, const ReductionOptions& options = {});

/// y^dagger (sum_{m=0}^{K} (M (x) M*)^m) b by repeated sparse mat-vec.
double neumann_partial(const WalkSpec& spec, const InitialState& init, int terms);

/// Power-iterated spectral radius of M (x) M*.
SpectralEstimate transient_spectral_radius(const WalkSpec& spec, const SpectralOptions& options = {});

/// Same power iteration started from psi (x) psi*. The operator maps product
/// vectors to product vectors, so each step applies M to psi alone. The top
/// of the spectrum comes in equal-modulus groups (steps flip position parity),
/// so the windowed estimate converges like 1/window, not geometrically.
SpectralEstimate transient_spectral_radius_product(const WalkSpec& spec, const SpectralOptions& options = {});

}  // namespace qwhit
