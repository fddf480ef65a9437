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
#include <optional>
#include <string>
#include <vector>

#include "qwhit/error.hpp"
#include "qwhit/sparse_matrix.hpp"
#include "qwhit/walk.hpp"

namespace qwhit::hhl {

inline constexpr int kMaxQubits = 26;
inline constexpr int kMaxClockQubits = 14;

/// Dense state-vector register of up to kMaxQubits qubits, little-endian:
/// qubit q is bit q of the basis index.
class Register {
 public:
  explicit Register(int qubits);
  Register(int qubits, Vector amplitudes);

  int qubits() const { return qubits_; }
  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }

  void apply_h(int q);
  /// Multiplies by e^{i phi} where both qubits are 1.
  void apply_cphase(int control, int target, double phi);
  void apply_swap(int a, int b);
  /// |x> -> 2^{-m/2} sum_y e^{2 pi i x y / 2^m} |y> on qubits first..first+count-1,
  /// with qubit `first` the least significant bit of x.
  void apply_qft(int first, int count);
  void apply_inverse_qft(int first, int count);

 private:
  int qubits_;
  Vector amps_;
};

enum class Estimator { kHadamardTest, kSwapTest };

struct HhlConfig {
  int clock_qubits = 8;
  /// t0; defaults to the largest value that keeps +-sigma_max inside the
  /// two's-complement clock range.
  std::optional<double> evolution_time;
  /// C; defaults to 0.9 * (smallest singular value of the padded matrix).
  std::optional<double> rotation_constant;
  /// 0 selects exact-amplitude mode.
  long shots = 0;
  Estimator estimator = Estimator::kHadamardTest;
  std::uint64_t seed = 1;
  int qubit_budget = kMaxQubits;

  void validate() const;
};

/// Smallest power of two >= dim.
int padded_dimension(int dim);

/// H = [[0, A_pad], [A_pad^dagger, 0]] with A zero-padded to a power of two and
/// an identity block on the padding. Dimension 2 * padded_dimension(A.dim()).
SparseMatrix hermitian_dilation(const SparseMatrix& a, int max_dim = 1 << 16);

/// [v_pad; 0] and [0; v_pad]: where b and the solution live in the dilated space.
Vector embed_upper(const Vector& v, int padded);
Vector embed_lower(const Vector& v, int padded);

struct HhlState {
  /// Normalized post-selected system state in the dilated space. The solution
  /// direction occupies the lower block.
  Vector state;
  /// ||A^{-1} b|| as read off the post-selected amplitude (sqrt(success) / C).
  double mu = 0.0;
  /// Probability of ancilla = 1 with the clock register back in |0>.
  double success_probability = 0.0;
  double evolution_time = 0.0;
  double rotation_constant = 0.0;
  int total_qubits = 0;
  std::vector<std::string> warnings;
};

/// Phase estimation of e^{i H t0} (applied exactly through the eigenbasis of H),
/// eigenvalue-inversion rotation C / lambda on an ancilla, inverse phase
/// estimation, and post-selection on ancilla = 1, clock = 0.
///
/// b must be real with unit norm. Throws BudgetExceeded if the register would
/// exceed cfg.qubit_budget and InvalidArgument if C exceeds the smallest
/// eigenvalue magnitude of H.
HhlState hhl_statevector(const SparseMatrix& a, const Vector& b, const HhlConfig& cfg);

struct InnerEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  long shots = 0;
};

/// Hadamard test: Re<y|x>. Swap test: |<y|x>| (nonnegative root). With
/// cfg.shots > 0 the outcome is sampled binomially from a generator seeded by
/// cfg.seed and the standard error of the estimate is reported.
InnerEstimate estimate_inner(const Vector& y, const Vector& x, const HhlConfig& cfg);

struct HhlOutcome {
  double p_estimate = 0.0;
  double mu = 0.0;
  double success_probability = 0.0;
  long shots_used = 0;
  double standard_error = 0.0;
  int clock_qubits = 0;
  /// p_raw - p_estimate; nonzero only when the raw value fell outside [0, 1].
  double clamped_by = 0.0;
  double evolution_time = 0.0;
  double rotation_constant = 0.0;
  int total_qubits = 0;
  std::vector<std::string> warnings;
};

/// Hitting probability at position 0 through the simulated quantum route:
/// p = mu * <y|x>. The initial state must have real amplitudes.
HhlOutcome q_hitting_prob(const WalkSpec& spec, const InitialState& init, const HhlConfig& cfg);

/// Qubits needed for a system of dimension `system_dim` and `clock` clock qubits.
int required_qubits(int system_dim, int clock);

}  // namespace qwhit::hhl
