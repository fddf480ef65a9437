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

#include "qwhit/walk.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qwhit {
namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kForbiddenAmplitudeSq = 1e-18;

// next = U M_no state, written into `next` (which must not alias `state`).
void apply_walk_step(const Vector& state, const CoinKets& kets, int n, Vector& next) {
  next.setZero(state.size());
  const int positions = n + 1;
  // M_no removes positions 0 and n; the wrap-around branches of S are
  // therefore fed only zeros, but the shift is still taken modulo n+1.
  for (int k = 1; k < n; ++k) {
    const Complex left = state[WalkSpec::index(k, Direction::kLeft)];
    const Complex right = state[WalkSpec::index(k, Direction::kRight)];
    const int to_left = (k + positions - 1) % positions;
    const int to_right = (k + 1) % positions;
    next[WalkSpec::index(to_left, Direction::kLeft)] += kets.top_overlap(left, right);
    next[WalkSpec::index(to_right, Direction::kRight)] += kets.bot_overlap(left, right);
  }
}

void check_forbidden_directions(const Vector& amps, int n) {
  const double at0 = std::norm(amps[WalkSpec::index(0, Direction::kRight)]);
  const double atn = std::norm(amps[WalkSpec::index(n, Direction::kLeft)]);
  if (at0 >= kForbiddenAmplitudeSq || atn >= kForbiddenAmplitudeSq) {
    throw_internal("walk state carries amplitude on (0,R) or (n,L); indexing bug");
  }
}

}  // namespace

Coin Coin::hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return Coin{s, s, std::numbers::pi};
}

void Coin::validate() const {
  if (a == Complex(0.0) || b == Complex(0.0)) throw_invalid("degenerate coin: a and b must be nonzero");
  const double norm = std::norm(a) + std::norm(b);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw_invalid("coin is not normalized: |a|^2 + |b|^2 = " + std::to_string(norm));
  }
  if (!std::isfinite(theta)) throw_invalid("coin theta must be finite");
}

DenseMatrix Coin::matrix() const {
  const Complex phase = std::polar(1.0, theta);
  DenseMatrix t(2, 2);
  t << a, b, -phase * std::conj(b), phase * std::conj(a);
  return t;
}

CoinKets derive_coin_kets(const Coin& coin) {
  coin.validate();
  const Complex phase = std::polar(1.0, -coin.theta);
  return CoinKets{{std::conj(coin.a), std::conj(coin.b)}, {-phase * coin.b, phase * coin.a}};
}

WalkSpec::WalkSpec(int n, Coin coin) : n_(n), coin_(coin), kets_(derive_coin_kets(coin)) {
  if (n < 2) throw_invalid("n must be ≥ 2");
}

StateVector::StateVector(int n) : n_(n), amps_(Vector::Zero(2 * (n + 1))) {}

StateVector::StateVector(int n, Vector amps) : n_(n), amps_(std::move(amps)) {
  if (amps_.size() != 2 * (n + 1)) throw_invalid("state vector length must be 2(n+1)");
  if (amps_.squaredNorm() > 1.0 + kNormTolerance) throw_invalid("state vector norm exceeds 1");
}

Vector InitialState::transient_amplitudes(const WalkSpec& spec) const {
  const int dim = spec.transient_dim();
  Vector psi = Vector::Zero(dim);
  if (const auto* basis = std::get_if<Basis>(&kind_)) {
    if (basis->position < 1 || basis->position > spec.n() - 1) {
      throw_invalid("initial state must be supported on positions 1..n-1");
    }
    psi[WalkSpec::transient_index(basis->position, basis->direction)] = 1.0;
    return psi;
  }
  if (const auto* expl = std::get_if<Explicit>(&kind_)) {
    if (static_cast<int>(expl->amplitudes.size()) != dim) {
      throw_invalid("explicit initial state needs 2(n-1) = " + std::to_string(dim) +
                    " amplitudes (positions 1..n-1)");
    }
    for (int i = 0; i < dim; ++i) psi[i] = expl->amplitudes[i];
  } else {
    const auto& rnd = std::get<SeededRandom>(kind_);
    std::mt19937_64 rng(rnd.seed);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = rnd.real_only ? 0.0 : gauss(rng);
      psi[i] = Complex(re, im);
    }
    psi /= psi.norm();
  }
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) throw_invalid("initial state must have unit norm");
  return psi;
}

StateVector InitialState::materialize(const WalkSpec& spec) const {
  const Vector psi = transient_amplitudes(spec);
  StateVector state(spec.n());
  state.amps().segment(2, psi.size()) = psi;
  return state;
}

bool InitialState::is_real(const WalkSpec& spec) const {
  const Vector psi = transient_amplitudes(spec);
  return (psi.imag().array() == 0.0).all();
}

SparseMatrix build_walk_unitary(const WalkSpec& spec) {
  const int n = spec.n();
  const int positions = n + 1;
  const CoinKets& kets = spec.kets();
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(4 * static_cast<std::size_t>(positions));
  // Column (k, d) maps to <top|d> |k-1, L> + <bot|d> |k+1, R>.
  for (int k = 0; k <= n; ++k) {
    const int left_row = WalkSpec::index((k + positions - 1) % positions, Direction::kLeft);
    const int right_row = WalkSpec::index((k + 1) % positions, Direction::kRight);
    for (int d = 0; d < 2; ++d) {
      const int col = WalkSpec::index(k, static_cast<Direction>(d));
      entries.push_back({left_row, col, std::conj(kets.top[d])});
      entries.push_back({right_row, col, std::conj(kets.bot[d])});
    }
  }
  return SparseMatrix::from_entries(spec.full_dim(), std::move(entries));
}

StepOutcome iterate_step(const StateVector& state, const WalkSpec& spec) {
  if (state.n() != spec.n()) throw_invalid("state and walk disagree on n");
  const Vector& amps = state.amps();
  check_forbidden_directions(amps, spec.n());
  const int n = spec.n();
  const double absorbed0 = std::norm(amps[WalkSpec::index(0, Direction::kLeft)]) +
                           std::norm(amps[WalkSpec::index(0, Direction::kRight)]);
  const double absorbed_n = std::norm(amps[WalkSpec::index(n, Direction::kLeft)]) +
                            std::norm(amps[WalkSpec::index(n, Direction::kRight)]);
  Vector next;
  apply_walk_step(amps, spec.kets(), n, next);
  return StepOutcome{absorbed0, absorbed_n, StateVector(n, std::move(next))};
}

HitResult hitting_prob_iterative(const WalkSpec& spec, const InitialState& init,
                                 const IterationOptions& options) {
  if (!(options.eps > 0.0)) throw_invalid("eps must be positive");
  if (options.max_steps < 1) throw_invalid("max_steps must be >= 1");
  const int n = spec.n();
  const long stall_window = 4L * n * n;

  Vector current = init.materialize(spec).amps();
  Vector next(current.size());
  HitResult result;
  result.residual = current.squaredNorm();

  double halving_reference = result.residual;
  long halving_step = 0;
  while (result.steps < options.max_steps && result.residual >= options.eps) {
    check_forbidden_directions(current, n);
    result.p0 += std::norm(current[WalkSpec::index(0, Direction::kLeft)]);
    result.pn += std::norm(current[WalkSpec::index(n, Direction::kRight)]);
    apply_walk_step(current, spec.kets(), n, next);
    current.swap(next);
    ++result.steps;
    result.residual = current.squaredNorm();

    if (result.residual <= 0.5 * halving_reference) {
      halving_reference = result.residual;
      halving_step = result.steps;
    } else if (result.steps - halving_step > stall_window) {
      result.decay_stalled = true;
    }
  }
  result.converged = result.residual < options.eps && !result.decay_stalled;

  if (std::abs(result.p0 + result.pn + result.residual - 1.0) > 1e-9) {
    throw_internal("iteration lost probability mass: p0 + pn + residual != 1");
  }
  return result;
}

}  // namespace qwhit
