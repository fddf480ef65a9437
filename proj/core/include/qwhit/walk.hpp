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

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "qwhit/error.hpp"
#include "qwhit/sparse_matrix.hpp"

namespace qwhit {

enum class Direction : int { kLeft = 0, kRight = 1 };

/// The 2x2 coin T = [[a, b], [-e^{i theta} b*, e^{i theta} a*]].
struct Coin {
  Complex a;
  Complex b;
  double theta = 0.0;

  /// a = b = 1/sqrt(2), theta = pi.
  static Coin hadamard();

  /// Throws InvalidArgument unless |a|^2 + |b|^2 = 1 (to 1e-12) and a, b != 0.
  void validate() const;

  /// The coin as a dense 2x2 matrix in the (L, R) basis.
  DenseMatrix matrix() const;
};

/// |top> and |bot> in the ordered basis (L, R); T = |L><top| + |R><bot|.
struct CoinKets {
  std::array<Complex, 2> top;
  std::array<Complex, 2> bot;

  /// <top|v> for a direction-space vector v.
  Complex top_overlap(Complex left, Complex right) const {
    return std::conj(top[0]) * left + std::conj(top[1]) * right;
  }
  Complex bot_overlap(Complex left, Complex right) const {
    return std::conj(bot[0]) * left + std::conj(bot[1]) * right;
  }
};

CoinKets derive_coin_kets(const Coin& coin);

/// Lattice 0..n with absorbing boundaries at 0 and n.
class WalkSpec {
 public:
  WalkSpec(int n, Coin coin);

  int n() const { return n_; }
  const Coin& coin() const { return coin_; }
  const CoinKets& kets() const { return kets_; }

  /// 2(n+1): positions 0..n times two directions.
  int full_dim() const { return 2 * (n_ + 1); }
  /// 2(n-1): positions 1..n-1 times two directions.
  int transient_dim() const { return 2 * (n_ - 1); }

  /// Full-space layout idx(k, d) = 2k + d.
  static int index(int position, Direction d) { return 2 * position + static_cast<int>(d); }
  /// Transient layout tidx(k, d) = 2(k - 1) + d, for k in 1..n-1.
  static int transient_index(int position, Direction d) {
    return 2 * (position - 1) + static_cast<int>(d);
  }

 private:
  int n_;
  Coin coin_;
  CoinKets kets_;
};

/// Amplitudes over positions x directions, possibly sub-normalized.
class StateVector {
 public:
  explicit StateVector(int n);
  StateVector(int n, Vector amps);

  int n() const { return n_; }
  const Vector& amps() const { return amps_; }
  Vector& amps() { return amps_; }

  Complex at(int position, Direction d) const { return amps_[WalkSpec::index(position, d)]; }
  Complex& at(int position, Direction d) { return amps_[WalkSpec::index(position, d)]; }

  double norm_squared() const { return amps_.squaredNorm(); }

 private:
  int n_;
  Vector amps_;
};

/// How the walk's starting state is produced. Always supported on 1..n-1.
class InitialState {
 public:
  struct Basis {
    int position;
    Direction direction;
  };
  /// Amplitudes in transient layout tidx(k, d); must have unit norm.
  struct Explicit {
    std::vector<Complex> amplitudes;
  };
  /// Gaussian amplitudes, normalized. real_only draws zero imaginary parts.
  struct SeededRandom {
    std::uint64_t seed;
    bool real_only;
  };

  static InitialState basis(int position, Direction d) { return InitialState(Basis{position, d}); }
  static InitialState from_amplitudes(std::vector<Complex> amplitudes) {
    return InitialState(Explicit{std::move(amplitudes)});
  }
  static InitialState random(std::uint64_t seed, bool real_only = false) {
    return InitialState(SeededRandom{seed, real_only});
  }

  const std::variant<Basis, Explicit, SeededRandom>& kind() const { return kind_; }

  /// Transient-layout amplitudes for this walk. Validates support and norm.
  Vector transient_amplitudes(const WalkSpec& spec) const;
  /// Embeds into the full 2(n+1) space.
  StateVector materialize(const WalkSpec& spec) const;
  /// True when every amplitude has zero imaginary part.
  bool is_real(const WalkSpec& spec) const;

 private:
  explicit InitialState(std::variant<Basis, Explicit, SeededRandom> kind) : kind_(std::move(kind)) {}
  std::variant<Basis, Explicit, SeededRandom> kind_;
};

/// Absorption at the two boundaries as reported by the iteration oracle.
struct HitResult {
  double p0 = 0.0;
  double pn = 0.0;
  /// Unabsorbed mass when iteration stopped; bounds the error of p0 and pn.
  double residual = 1.0;
  long steps = 0;
  bool converged = false;
  /// Residual failed to halve within 4n^2 consecutive steps at some point.
  bool decay_stalled = false;
};

/// U = S (I_p (x) T), dimension 2(n+1), shift taken modulo n+1.
SparseMatrix build_walk_unitary(const WalkSpec& spec);

struct StepOutcome {
  double absorbed0;
  double absorbed_n;
  StateVector next;
};

/// One measure-then-evolve step: reads absorbed mass at 0 and n, then applies
/// U M_no. Throws InternalError if amplitude sits on (0, R) or (n, L).
StepOutcome iterate_step(const StateVector& state, const WalkSpec& spec);

struct IterationOptions {
  double eps = 1e-10;
  long max_steps = 1'000'000;
};

/// Partial sums of absorbed mass until the residual drops below eps.
/// p0 and pn are lower bounds on the limits; their error is at most residual.
HitResult hitting_prob_iterative(const WalkSpec& spec, const InitialState& init,
                                 const IterationOptions& options = {});

}  // namespace qwhit
