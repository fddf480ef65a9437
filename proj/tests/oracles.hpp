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

// Dense reference computations written straight from the walk's definition.
// They share nothing with the library's sparse builders beyond the Coin type.

#include <cstdint>
#include <random>

#include "qwhit/walk.hpp"

namespace qwhit::testing {

/// Coin matrix applied to the direction, then L moves left and R moves
/// right, modulo n+1. Index 2k + d.
DenseMatrix dense_walk_unitary(const Coin& coin, int n);

/// Rows and columns of the dense unitary for positions 1..n-1.
DenseMatrix dense_transient_block(const Coin& coin, int n);

/// Measure, absorb, evolve, with dense matrices; stops when the unabsorbed
/// mass drops below eps. Returns {p0, pn, residual}.
struct DenseHit {
  double p0;
  double pn;
  double residual;
};
DenseHit dense_iterate(const Coin& coin, int n, const Vector& psi_full, double eps, long max_steps);

/// y^dagger (I - M (x) M*)^{-1} (psi (x) psi*) by dense inversion, with M the
/// transient block above and y built from the first row of that block.
double dense_inverse_p0(const Coin& coin, int n, const Vector& psi_transient);

/// Full-space embedding of transient-layout amplitudes.
Vector embed_transient(int n, const Vector& psi_transient);

/// Unit vector with iid complex Gaussian entries.
Vector random_state(std::mt19937_64& rng, int dim, bool real_only = false);

DenseMatrix random_matrix(std::mt19937_64& rng, int dim);

/// Kronecker product, first factor major.
DenseMatrix dense_kron(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace qwhit::testing
