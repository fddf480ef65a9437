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

#include <cstdint>
#include <functional>

#include "qwhit/error.hpp"
#include "qwhit/sparse_matrix.hpp"

namespace qwhit {

/// out = Op(in). `out` is resized by the callee.
using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

struct SpectralOptions {
  double tol = 1e-6;
  long max_iters = 200'000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct SpectralEstimate {
  double value = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Spectral radius by power iteration.
///
/// The growth rate ||A v_k|| of the normalized iterate is averaged
/// geometrically over doubling windows (16, 32, 64, ... steps); the estimate
/// is accepted when two consecutive windows agree to `tol` relative. The
/// geometric mean is what makes this work when several eigenvalues share the
/// largest modulus, where the one-step ratio oscillates forever.
SpectralEstimate spectral_radius(const LinearOperator& op, int dim, const SpectralOptions& options = {});

/// Largest eigenvalue of a Hermitian positive semidefinite operator by power
/// iteration with Rayleigh quotients. Converged when the eigen-residual
/// ||B v - lambda v|| drops below tol * lambda.
SpectralEstimate largest_eigenvalue_psd(const LinearOperator& op, int dim,
                                        const SpectralOptions& options = {});

/// Largest eigenvalue of a Hermitian positive semidefinite operator by the
/// Lanczos three-term recurrence, without reorthogonalization and without
/// storing the Krylov basis. The top Ritz value is found by Sturm bisection on
/// the tridiagonal matrix every `check_every` steps; by interlacing it never
/// decreases. Converged when the Ritz residual beta_k |s_k| drops below
/// tol * theta. `iterations` counts operator applications.
SpectralEstimate largest_eigenvalue_lanczos(const LinearOperator& op, int dim,
                                            const SpectralOptions& options = {}, int check_every = 8);

enum class InnerSolve { kAuto, kDirect, kCgnr };

/// kPower is the plain power / inverse iteration; kLanczos runs the same
/// operators through largest_eigenvalue_lanczos.
enum class SigmaMethod { kLanczos, kPower };

struct SigmaExtremes {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  long iters_max = 0;
  long iters_min = 0;
  bool converged = false;

  double kappa() const { return sigma_max / sigma_min; }
};

struct SigmaOptions {
  double tol = 1e-6;
  long max_iters = 200'000;
  SigmaMethod method = SigmaMethod::kLanczos;
  InnerSolve inner = InnerSolve::kAuto;
  /// kAuto switches from sparse LU to CGNR inner solves above this dimension.
  int direct_budget = 1 << 20;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Largest and smallest singular values of A from the top eigenvalue of
/// A^dagger A (sigma_max) and of (A^dagger A)^{-1} (sigma_min).
SigmaExtremes sigma_extremes(const SparseMatrix& a, const SigmaOptions& options = {});

}  // namespace qwhit
