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

#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qwhit/spectral.hpp"
#include "qwhit/walk.hpp"

namespace qwhit {

/// Condition number of I - M (x) M* at one lattice size.
struct KappaSample {
  int n = 0;
  double kappa = 0.0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  long iters_max = 0;
  long iters_min = 0;
  /// False when the size failed; `error` then says why and the numbers are
  /// whatever the last estimate was (NaN if none).
  bool ok = true;
  std::string error;
};

/// kappa ~ exp(log_coefficient) * n^exponent.
struct FitResult {
  double exponent = 0.0;
  double log_coefficient = 0.0;
  double rms_log_residual = 0.0;
};

/// One sample per n in [n_min, n_max]. Failures are recorded in place and the
/// sweep moves on. Deterministic in (coin, range, options).
std::vector<KappaSample> sweep_kappa(const Coin& coin, int n_min, int n_max,
                                     const SigmaOptions& options = {});

/// Least-squares line through (log n, log kappa) over the ok samples.
/// Throws InvalidArgument with fewer than three distinct n.
FitResult fit_exponent(std::span<const KappaSample> samples);

/// Same fit on raw abscissas/ordinates (both must be positive).
FitResult fit_power_law(std::span<const double> x, std::span<const double> y);

/// Header "n,kappa,sigma_max,sigma_min,iters_max,iters_min", 17 significant digits.
void write_kappa_csv(std::ostream& out, std::span<const KappaSample> samples);

enum class CoinConstraint {
  /// |a|^2 + |b|^2 = 1, the unitarity condition of the coin.
  kUnitary,
  /// |a| + |b| = 1 drawn first, then (a, b) rescaled to unit 2-norm.
  kModulusSum,
};

/// Random coin with |a| >= 1/sqrt(2) and uniformly random phases.
Coin random_biased_coin(std::mt19937_64& rng, CoinConstraint constraint = CoinConstraint::kUnitary);

/// Random nondegenerate coin: |a|^2 uniform in [0.05, 0.95], phases uniform.
Coin random_coin(std::mt19937_64& rng);

}  // namespace qwhit
