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

#include "qwhit/reduction.hpp"

#include <cmath>
#include <string>

#include "qwhit/solvers.hpp"

namespace qwhit {
namespace {

constexpr double kImagTolerance = 1e-8;
constexpr double kRangeSlack = 1e-8;

ReductionResult neumann_solve(const SparseMatrix& a, const Vector& b, const Vector& y,
                              const ReductionOptions& options) {
  // M (x) M* = I - A; the next Neumann term is exactly the residual of the
  // current partial sum, so ||term|| doubles as the stopping test.
  const SparseMatrix superop = identity_minus(a);
  ReductionResult result;
  result.solver = SolverKind::kNeumann;
  Vector sum = b;
  Vector term = b;
  Vector next(b.size());
  const double target = options.tol * b.norm();
  while (result.iterations < options.max_iters) {
    superop.multiply(term, next);
    term.swap(next);
    ++result.iterations;
    if (term.norm() <= target) break;
    sum += term;
  }
  result.residual_norm = residual_norm(a, sum, b);
  result.converged = result.residual_norm <= target;
  const Complex value = y.dot(sum);
  result.p0 = value.real();
  if (result.converged && std::abs(value.imag()) >= kImagTolerance) {
    throw_internal("hitting probability has an imaginary part; construction bug");
  }
  return result;
}

}  // namespace

SparseMatrix build_M(const WalkSpec& spec) {
  const int n = spec.n();
  const CoinKets& kets = spec.kets();
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(4 * static_cast<std::size_t>(n));
  for (int d = 0; d < 2; ++d) {
    const auto dir = static_cast<Direction>(d);
    // |k-1><k| (x) |L><top|, k = 2..n-1
    for (int k = 2; k <= n - 1; ++k) {
      entries.push_back({WalkSpec::transient_index(k - 1, Direction::kLeft),
                         WalkSpec::transient_index(k, dir), std::conj(kets.top[d])});
    }
    // |k+1><k| (x) |R><bot|, k = 1..n-2
    for (int k = 1; k <= n - 2; ++k) {
      entries.push_back({WalkSpec::transient_index(k + 1, Direction::kRight),
                         WalkSpec::transient_index(k, dir), std::conj(kets.bot[d])});
    }
  }
  return SparseMatrix::from_entries(spec.transient_dim(), std::move(entries));
}

SparseMatrix build_transient_superop(const WalkSpec& spec) {
  const SparseMatrix m = build_M(spec);
  return kron(m, m.conjugate());
}

SparseMatrix build_A(const WalkSpec& spec, long long budget) {
  const long long dim = static_cast<long long>(spec.transient_dim()) * spec.transient_dim();
  if (dim > budget) {
    throw BudgetExceeded("system dimension " + std::to_string(dim) + " exceeds budget " +
                         std::to_string(budget));
  }
  return identity_minus(build_transient_superop(spec));
}

Vector build_b(const Vector& psi) {
  const auto d = psi.size();
  Vector b(d * d);
  for (Eigen::Index i = 0; i < d; ++i) b.segment(i * d, d) = psi[i] * psi.conjugate();
  return b;
}

Vector build_b(const WalkSpec& spec, const InitialState& init) {
  return build_b(init.transient_amplitudes(spec));
}

Vector build_probe(const WalkSpec& spec) {
  Vector e = Vector::Zero(spec.transient_dim());
  e[WalkSpec::transient_index(1, Direction::kLeft)] = spec.kets().top[0];
  e[WalkSpec::transient_index(1, Direction::kRight)] = spec.kets().top[1];
  return build_b(e);
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kDirect:
      return "direct";
    case SolverKind::kCgnr:
      return "cgnr";
    case SolverKind::kNeumann:
      return "neumann";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "direct") return SolverKind::kDirect;
  if (name == "cgnr") return SolverKind::kCgnr;
  if (name == "neumann") return SolverKind::kNeumann;
  throw_invalid("unknown solver '" + std::string(name) + "'");
}

ReductionResult hitting_prob_from_system(const SparseMatrix& a, const Vector& b, const Vector& y,
                                         SolverKind solver, const ReductionOptions& options) {
  if (b.size() != a.dim() || y.size() != a.dim()) throw_invalid("system operands disagree in size");

  ReductionResult result;
  if (solver == SolverKind::kNeumann) {
    result = neumann_solve(a, b, y, options);
  } else {
    const SolveReport report = solver == SolverKind::kCgnr
                                   ? cgnr_solve(a, b, options.tol, options.max_iters)
                               : a.dim() <= options.dense_budget
                                   ? lu_solve(a, b, options.dense_budget)
                                   : sparse_lu_solve(a, b);
    result.solver = solver;
    result.iterations = report.iterations;
    result.residual_norm = report.residual_norm;
    result.converged = report.converged;
    const Complex value = y.dot(report.solution);
    if (result.converged && std::abs(value.imag()) >= kImagTolerance) {
      throw_internal("hitting probability has an imaginary part; construction bug");
    }
    result.p0 = value.real();
  }
  if (result.converged && (result.p0 < -kRangeSlack || result.p0 > 1.0 + kRangeSlack)) {
    throw_internal("hitting probability outside [0, 1]: " + std::to_string(result.p0));
  }
  result.pn = 1.0 - result.p0;
  return result;
}

ReductionResult hitting_prob_direct(const WalkSpec& spec, const InitialState& init,
                                    SolverKind solver, const ReductionOptions& options) {
  const SparseMatrix a = build_A(spec, options.system_budget);
  return hitting_prob_from_system(a, build_b(spec, init), build_probe(spec), solver, options);
}

double neumann_partial(const WalkSpec& spec, const InitialState& init, int terms) {
  if (terms < 0) throw_invalid("neumann_partial: K must be >= 0");
  const SparseMatrix superop = build_transient_superop(spec);
  const Vector y = build_probe(spec);
  Vector term = build_b(spec, init);
  Vector next(term.size());
  double sum = y.dot(term).real();
  for (int m = 1; m <= terms; ++m) {
    superop.multiply(term, next);
    term.swap(next);
    sum += y.dot(term).real();
  }
  return sum;
}

SpectralEstimate transient_spectral_radius(const WalkSpec& spec, const SpectralOptions& options) {
  const SparseMatrix superop = build_transient_superop(spec);
  const LinearOperator op = [&superop](const Vector& in, Vector& out) { superop.multiply(in, out); };
  return spectral_radius(op, superop.dim(), options);
}

SpectralEstimate transient_spectral_radius_product(const WalkSpec& spec, const SpectralOptions& options) {
  const SparseMatrix m = build_M(spec);
  const LinearOperator op = [&m](const Vector& in, Vector& out) { m.multiply(in, out); };
  // ||M psi (x) (M psi)*|| = ||M psi||^2 at every step.
  SpectralEstimate est = spectral_radius(op, m.dim(), options);
  est.value *= est.value;
  return est;
}

}  // namespace qwhit
