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

#include <vector>

#include "qwhit/error.hpp"
#include "qwhit/spectral.hpp"
#include "qwhit/walk.hpp"

namespace qwhit {

/// Dense channel algebra for small Hilbert spaces.
///
/// Everything here works with D^2 x D^2 dense matrices and is capped at
/// D <= 64 by default. It is the slow, transparent cross-check for the
/// sparse reduction, not the scalable path.
///
/// Vectorization is row-major: vec(rho)[i * D + j] = rho(i, j), which makes
/// vec(rho) = (rho (x) I)|Omega> and vec(F rho F^dagger) = (F (x) F*) vec(rho).
namespace superop {

inline constexpr int kDefaultMaxDim = 64;

/// Kraus representation F(rho) = sum_k F_k rho F_k^dagger.
class KrausMap {
 public:
  explicit KrausMap(std::vector<DenseMatrix> ops);

  int dim() const { return dim_; }
  const std::vector<DenseMatrix>& ops() const { return ops_; }

  /// sum_k F_k^dagger F_k = I within tol.
  bool is_trace_preserving(double tol = 1e-10) const;
  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  int dim_;
  std::vector<DenseMatrix> ops_;
};

/// Orthogonal projector: P^2 = P = P^dagger within 1e-10.
/// Minimality of the projected subspace is the caller's claim; it is not checked.
class SubspaceProjector {
 public:
  explicit SubspaceProjector(DenseMatrix projector);
  /// Projector onto span{|i> : i in indices}.
  static SubspaceProjector onto_basis(int dim, const std::vector<int>& indices);

  int dim() const { return static_cast<int>(p_.rows()); }
  const DenseMatrix& matrix() const { return p_; }

 private:
  DenseMatrix p_;
};

/// |Omega> = sum_i |i> (x) |i>, unnormalized, <Omega|Omega> = D.
Vector max_entangled(int dim);

Vector vectorize(const DenseMatrix& m);
DenseMatrix unvectorize(const Vector& v, int dim);

/// M_F = sum_k F_k (x) F_k*.
DenseMatrix matrix_representation(const KrausMap& map, int max_dim = kDefaultMaxDim);

struct ShiftTransient {
  KrausMap shift;      ///< {P_B F_k P_T}
  KrausMap transient;  ///< {P_T F_k P_T}
};

/// Throws InvalidArgument when P_B P_T != 0.
ShiftTransient split_shift_transient(const KrausMap& map, const SubspaceProjector& absorbing,
                                     const SubspaceProjector& transient);

struct Lemma1Options {
  int max_dim = kDefaultMaxDim;
  /// Required gap below 1 for the spectral radius of M_{F_t}.
  double contraction_slack = 1e-9;
  SpectralOptions spectral{1e-4, 1 << 14};
};

/// Probability of eventually hitting the absorbing subspace B:
///   tr(P_B rho) + <Omega| M_{F_s} (I - M_{F_t})^{-1} (rho (x) I) |Omega>.
/// Throws InvalidArgument("transient operator not strictly contracting") if the
/// power-iterated spectral radius of M_{F_t} is not below 1 - slack.
double lemma1_hitting(const KrausMap& map, const SubspaceProjector& absorbing,
                      const SubspaceProjector& transient, const DenseMatrix& rho,
                      const Lemma1Options& options = {});

/// tr(P_B rho) + sum_{m=0}^{K} tr(F_s o F_t^m (rho)), by direct Kraus application.
double lemma1_partial(const KrausMap& map, const SubspaceProjector& absorbing,
                      const SubspaceProjector& transient, const DenseMatrix& rho, int terms);

/// The walk's one-step channel {U M_no, M_yes} on the full 2(n+1) space.
KrausMap walk_channel(const WalkSpec& spec);
/// Projector onto positions 1..n-1 (both directions).
SubspaceProjector walk_transient_projector(const WalkSpec& spec);
/// Projector onto span{|0, L>}.
SubspaceProjector walk_left_absorber(const WalkSpec& spec);
/// Projector onto span{|n, R>}.
SubspaceProjector walk_right_absorber(const WalkSpec& spec);

}  // namespace superop
}  // namespace qwhit
