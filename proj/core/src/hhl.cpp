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

#include "qwhit/hhl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qwhit/reduction.hpp"

namespace qwhit::hhl {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSuccessStreamSalt = 0x6a09e667f3bcc909ULL;

int log2_exact(int value) { return std::countr_zero(static_cast<unsigned>(value)); }

double default_evolution_time(double sigma_max, int clock) {
  // Largest representable positive phase is (2^{c-1} - 1) / 2^c.
  if (clock == 1) return kPi / (2.0 * sigma_max);
  return kPi / sigma_max * (1.0 - std::ldexp(1.0, 1 - clock));
}

long signed_clock_value(long k, long clock_states) { return k >= clock_states / 2 ? k - clock_states : k; }

void check_unit_real(const Vector& b) {
  if ((b.imag().array() != 0.0).any()) throw_invalid("hhl: right-hand side must have real amplitudes");
  if (std::abs(b.norm() - 1.0) > 1e-10) throw_invalid("hhl: right-hand side must have unit norm");
}

// Multiplies every amplitude whose clock register holds k by
// exp(sign * i * lambda_j * t0 * 2^q) for each set clock bit q, i.e. the
// controlled-U^{2^q} ladder, with the system register in the eigenbasis of H.
void apply_controlled_evolutions(Register& reg, const Eigen::VectorXd& eigenvalues, int system_qubits,
                                 int clock, double t0, double sign) {
  Vector& amps = reg.amplitudes();
  const long system_mask = (1L << system_qubits) - 1;
  for (int q = 0; q < clock; ++q) {
    const long bit = 1L << (system_qubits + q);
    const double scale = sign * t0 * std::ldexp(1.0, q);
    for (long i = 0; i < amps.size(); ++i) {
      if ((i & bit) == 0) continue;
      amps[i] *= std::polar(1.0, scale * eigenvalues[i & system_mask]);
    }
  }
}

}  // namespace

Register::Register(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxQubits) throw BudgetExceeded("register size out of range");
  amps_ = Vector::Zero(1L << qubits);
  amps_[0] = 1.0;
}

Register::Register(int qubits, Vector amplitudes) : qubits_(qubits), amps_(std::move(amplitudes)) {
  if (qubits < 1 || qubits > kMaxQubits) throw BudgetExceeded("register size out of range");
  if (amps_.size() != (1L << qubits)) throw_invalid("register amplitude count must be 2^qubits");
}

void Register::apply_h(int q) {
  const long bit = 1L << q;
  const double s = 1.0 / std::numbers::sqrt2;
  for (long i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = s * (a0 + a1);
    amps_[i | bit] = s * (a0 - a1);
  }
}

void Register::apply_cphase(int control, int target, double phi) {
  const long mask = (1L << control) | (1L << target);
  const Complex phase = std::polar(1.0, phi);
  for (long i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] *= phase;
  }
}

void Register::apply_swap(int a, int b) {
  if (a == b) return;
  const long ba = 1L << a;
  const long bb = 1L << b;
  for (long i = 0; i < amps_.size(); ++i) {
    if ((i & ba) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ba) | bb]);
  }
}

void Register::apply_qft(int first, int count) {
  for (int j = count - 1; j >= 0; --j) {
    apply_h(first + j);
    for (int m = j - 1; m >= 0; --m) apply_cphase(first + m, first + j, kPi / std::ldexp(1.0, j - m));
  }
  for (int i = 0; i < count / 2; ++i) apply_swap(first + i, first + count - 1 - i);
}

void Register::apply_inverse_qft(int first, int count) {
  for (int i = 0; i < count / 2; ++i) apply_swap(first + i, first + count - 1 - i);
  for (int j = 0; j < count; ++j) {
    for (int m = 0; m < j; ++m) apply_cphase(first + m, first + j, -kPi / std::ldexp(1.0, j - m));
    apply_h(first + j);
  }
}

void HhlConfig::validate() const {
  if (clock_qubits < 1 || clock_qubits > kMaxClockQubits) throw_invalid("clock_qubits must be in [1, 14]");
  if (evolution_time && !(*evolution_time > 0.0)) throw_invalid("evolution_time must be positive");
  if (rotation_constant && !(*rotation_constant > 0.0)) throw_invalid("rotation_constant must be positive");
  if (shots < 0) throw_invalid("shots must be >= 0");
  if (qubit_budget < 1) throw_invalid("qubit budget must be positive");
}

int padded_dimension(int dim) {
  if (dim < 1) throw_invalid("padded_dimension: dimension must be positive");
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(dim)));
}

int required_qubits(int system_dim, int clock) {
  return log2_exact(2 * padded_dimension(system_dim)) + clock + 1;
}

SparseMatrix hermitian_dilation(const SparseMatrix& a, int max_dim) {
  const int padded = padded_dimension(a.dim());
  if (2L * padded > max_dim) throw BudgetExceeded("hermitian_dilation: dimension exceeds budget");
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(2 * (a.nnz() + static_cast<std::size_t>(padded - a.dim())));
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (int r = 0; r < a.dim(); ++r) {
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) {
      entries.push_back({r, padded + cols[k], vals[k]});
      entries.push_back({padded + cols[k], r, std::conj(vals[k])});
    }
  }
  for (int r = a.dim(); r < padded; ++r) {
    entries.push_back({r, padded + r, 1.0});
    entries.push_back({padded + r, r, 1.0});
  }
  return SparseMatrix::from_entries(2 * padded, std::move(entries));
}

Vector embed_upper(const Vector& v, int padded) {
  Vector out = Vector::Zero(2L * padded);
  out.head(v.size()) = v;
  return out;
}

Vector embed_lower(const Vector& v, int padded) {
  Vector out = Vector::Zero(2L * padded);
  out.segment(padded, v.size()) = v;
  return out;
}

HhlState hhl_statevector(const SparseMatrix& a, const Vector& b, const HhlConfig& cfg) {
  cfg.validate();
  if (b.size() != a.dim()) throw_invalid("hhl: right-hand side has wrong length");
  check_unit_real(b);

  const int padded = padded_dimension(a.dim());
  const int dim = 2 * padded;
  const int system_qubits = log2_exact(dim);
  const int clock = cfg.clock_qubits;
  const int total = system_qubits + clock + 1;
  if (total > cfg.qubit_budget) {
    throw BudgetExceeded("hhl budget: " + std::to_string(total) + " qubits needed, budget is " +
                         std::to_string(cfg.qubit_budget));
  }

  const DenseMatrix h = hermitian_dilation(a).to_dense();
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw_internal("hhl: eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const DenseMatrix& basis = eig.eigenvectors();
  const double sigma_max = lambda.cwiseAbs().maxCoeff();
  const double sigma_min = lambda.cwiseAbs().minCoeff();
  if (!(sigma_min > 0.0)) throw SingularMatrix("hhl: matrix is singular");

  HhlState out;
  out.total_qubits = total;
  out.rotation_constant = cfg.rotation_constant.value_or(0.9 * sigma_min);
  out.evolution_time = cfg.evolution_time.value_or(default_evolution_time(sigma_max, clock));
  if (out.rotation_constant > sigma_min * (1.0 + 1e-12)) {
    throw_invalid("hhl: rotation constant C exceeds the smallest eigenvalue magnitude");
  }
  const double c_const = out.rotation_constant;
  const double t0 = out.evolution_time;
  const long clock_states = 1L << clock;

  // Distinct eigenvalues landing in one clock bin cannot be told apart.
  std::vector<std::pair<long, double>> bins;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    const double phase = lambda[j] * t0 / (2.0 * kPi);
    bins.emplace_back(std::lround(phase * static_cast<double>(clock_states)), lambda[j]);
  }
  std::sort(bins.begin(), bins.end());
  for (std::size_t i = 1; i < bins.size(); ++i) {
    if (bins[i].first == bins[i - 1].first && std::abs(bins[i].second - bins[i - 1].second) > 1e-9) {
      out.warnings.push_back("clock resolution too coarse: distinct eigenvalues share a clock bin");
      break;
    }
  }

  Register reg(total, Vector::Zero(1L << total));
  reg.amplitudes().head(dim) = basis.adjoint() * embed_upper(b, padded);

  for (int q = 0; q < clock; ++q) reg.apply_h(system_qubits + q);
  apply_controlled_evolutions(reg, lambda, system_qubits, clock, t0, +1.0);
  reg.apply_inverse_qft(system_qubits, clock);

  // |0> -> sqrt(1 - r^2)|0> + r|1> with r = C / lambda_estimate.
  Vector& amps = reg.amplitudes();
  const long ancilla = 1L << (system_qubits + clock);
  for (long i = 0; i < ancilla; ++i) {
    const long k = signed_clock_value((i >> system_qubits) & (clock_states - 1), clock_states);
    if (k == 0) continue;
    const double estimate = 2.0 * kPi * static_cast<double>(k) / (static_cast<double>(clock_states) * t0);
    const double r = std::clamp(c_const / estimate, -1.0, 1.0);
    const double keep = std::sqrt(1.0 - r * r);
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | ancilla];
    amps[i] = keep * a0 - r * a1;
    amps[i | ancilla] = r * a0 + keep * a1;
  }

  reg.apply_qft(system_qubits, clock);
  apply_controlled_evolutions(reg, lambda, system_qubits, clock, t0, -1.0);
  for (int q = 0; q < clock; ++q) reg.apply_h(system_qubits + q);

  const Vector kept = amps.segment(ancilla, dim);
  const double norm = kept.norm();
  if (!(norm > 0.0)) throw Error("hhl: post-selection has zero success probability");
  out.success_probability = norm * norm;
  out.mu = norm / c_const;
  out.state = basis * kept / norm;
  return out;
}

InnerEstimate estimate_inner(const Vector& y, const Vector& x, const HhlConfig& cfg) {
  if (y.size() != x.size()) throw_invalid("estimate_inner: states differ in dimension");
  if (std::abs(y.norm() - 1.0) > 1e-8 || std::abs(x.norm() - 1.0) > 1e-8) {
    throw_invalid("estimate_inner: states must be normalized");
  }
  if (cfg.shots < 0) throw_invalid("shots must be >= 0");
  const Complex overlap = y.dot(x);
  InnerEstimate est;
  est.shots = cfg.shots;
  if (cfg.estimator == Estimator::kHadamardTest) {
    const double exact = overlap.real();
    if (cfg.shots == 0) {
      est.value = exact;
      return est;
    }
    std::mt19937_64 rng(cfg.seed);
    std::binomial_distribution<long> draw(cfg.shots, std::clamp(0.5 * (1.0 + exact), 0.0, 1.0));
    const double f = static_cast<double>(draw(rng)) / static_cast<double>(cfg.shots);
    est.value = 2.0 * f - 1.0;
    est.standard_error = 2.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(cfg.shots));
    return est;
  }

  const double exact = std::norm(overlap);
  if (cfg.shots == 0) {
    est.value = std::sqrt(exact);
    return est;
  }
  std::mt19937_64 rng(cfg.seed);
  std::binomial_distribution<long> draw(cfg.shots, std::clamp(0.5 * (1.0 + exact), 0.0, 1.0));
  const double f = static_cast<double>(draw(rng)) / static_cast<double>(cfg.shots);
  const double squared = std::max(0.0, 2.0 * f - 1.0);
  const double se_squared = 2.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(cfg.shots));
  est.value = std::sqrt(squared);
  est.standard_error = est.value > 0.0 ? se_squared / (2.0 * est.value) : std::sqrt(se_squared);
  return est;
}

HhlOutcome q_hitting_prob(const WalkSpec& spec, const InitialState& init, const HhlConfig& cfg) {
  cfg.validate();
  if (!init.is_real(spec)) {
    throw_invalid(
        "real-amplitude restriction: the quantum route prepares psi0 (x) psi0, which equals "
        "psi0 (x) psi0* only when every amplitude is real");
  }
  const int system_dim = spec.transient_dim() * spec.transient_dim();
  const int needed = required_qubits(system_dim, cfg.clock_qubits);
  if (needed > cfg.qubit_budget) {
    throw BudgetExceeded("hhl budget: n = " + std::to_string(spec.n()) + " needs " +
                         std::to_string(needed) + " qubits, budget is " + std::to_string(cfg.qubit_budget));
  }

  const SparseMatrix a = build_A(spec);
  const HhlState solved = hhl_statevector(a, build_b(spec, init), cfg);
  const int padded = padded_dimension(a.dim());
  const Vector probe = embed_lower(build_probe(spec), padded);
  const InnerEstimate inner = estimate_inner(probe, solved.state, cfg);

  HhlOutcome out;
  out.success_probability = solved.success_probability;
  out.clock_qubits = cfg.clock_qubits;
  out.evolution_time = solved.evolution_time;
  out.rotation_constant = solved.rotation_constant;
  out.total_qubits = solved.total_qubits;
  out.warnings = solved.warnings;

  double mu = solved.mu;
  double se_mu = 0.0;
  if (cfg.shots > 0) {
    // mu^2 C^2 is the post-selection probability; estimate it by frequency.
    std::mt19937_64 rng(cfg.seed ^ kSuccessStreamSalt);
    std::binomial_distribution<long> draw(cfg.shots, std::clamp(solved.success_probability, 0.0, 1.0));
    const double f = static_cast<double>(draw(rng)) / static_cast<double>(cfg.shots);
    const double c_const = solved.rotation_constant;
    mu = std::sqrt(f) / c_const;
    const double se_f = std::sqrt(f * (1.0 - f) / static_cast<double>(cfg.shots));
    se_mu = f > 0.0 ? se_f / (2.0 * c_const * std::sqrt(f)) : 0.0;
    out.shots_used = 2 * cfg.shots;
  }
  out.mu = mu;

  const double raw = mu * inner.value;
  out.p_estimate = std::clamp(raw, 0.0, 1.0);
  out.clamped_by = raw - out.p_estimate;
  out.standard_error = std::hypot(inner.value * se_mu, mu * inner.standard_error);
  return out;
}

}  // namespace qwhit::hhl
