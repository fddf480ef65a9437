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

#include "qwhit/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>

#include "qwhit/reduction.hpp"

namespace qwhit {

std::vector<KappaSample> sweep_kappa(const Coin& coin, int n_min, int n_max, const SigmaOptions& options) {
  if (n_min < 3 || n_max < n_min) throw_invalid("sweep range must satisfy 3 <= n_min <= n_max");
  coin.validate();
  std::vector<KappaSample> samples;
  samples.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    KappaSample s;
    s.n = n;
    try {
      const SigmaExtremes sigma = sigma_extremes(build_A(WalkSpec(n, coin)), options);
      s.sigma_max = sigma.sigma_max;
      s.sigma_min = sigma.sigma_min;
      s.kappa = sigma.sigma_min > 0.0 ? sigma.kappa() : std::numeric_limits<double>::infinity();
      s.iters_max = sigma.iters_max;
      s.iters_min = sigma.iters_min;
      if (!sigma.converged) {
        s.ok = false;
        s.error = "singular value iteration did not converge";
      }
    } catch (const Error& e) {
      s.ok = false;
      s.error = e.what();
      s.kappa = s.sigma_max = s.sigma_min = std::numeric_limits<double>::quiet_NaN();
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

FitResult fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw_invalid("fit: abscissa and ordinate counts differ");
  if (std::set<double>(x.begin(), x.end()).size() < 3) {
    throw_invalid("fit: ≥ 3 samples required with distinct n (degenerate abscissas)");
  }
  const std::size_t count = x.size();
  std::vector<double> lx(count);
  std::vector<double> ly(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw_invalid("fit: samples must be positive and finite");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(count);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  FitResult fit;
  fit.exponent = sxy / sxx;
  fit.log_coefficient = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = ly[i] - (fit.log_coefficient + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.rms_log_residual = std::sqrt(ss / static_cast<double>(count));
  return fit;
}

FitResult fit_exponent(std::span<const KappaSample> samples) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : samples) {
    if (!s.ok) continue;
    x.push_back(static_cast<double>(s.n));
    y.push_back(s.kappa);
  }
  return fit_power_law(x, y);
}

void write_kappa_csv(std::ostream& out, std::span<const KappaSample> samples) {
  const auto old_precision = out.precision(17);
  out << "n,kappa,sigma_max,sigma_min,iters_max,iters_min\n";
  for (const auto& s : samples) {
    out << s.n << ',' << s.kappa << ',' << s.sigma_max << ',' << s.sigma_min << ',' << s.iters_max
        << ',' << s.iters_min << '\n';
  }
  out.precision(old_precision);
}

Coin random_biased_coin(std::mt19937_64& rng, CoinConstraint constraint) {
  std::uniform_real_distribution<double> modulus(1.0 / std::numbers::sqrt2, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  double abs_a = modulus(rng);
  double abs_b = 0.0;
  if (constraint == CoinConstraint::kUnitary) {
    abs_b = std::sqrt(1.0 - abs_a * abs_a);
  } else {
    abs_b = 1.0 - abs_a;
    const double scale = std::hypot(abs_a, abs_b);
    abs_a /= scale;
    abs_b /= scale;
  }
  const double arg_a = phase(rng);
  const double arg_b = phase(rng);
  const double theta = phase(rng);
  Coin coin{std::polar(abs_a, arg_a), std::polar(abs_b, arg_b), theta};
  coin.validate();
  return coin;
}

Coin random_coin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.05, 0.95);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double pa = weight(rng);
  const double arg_a = phase(rng);
  const double arg_b = phase(rng);
  const double theta = phase(rng);
  return Coin{std::polar(std::sqrt(pa), arg_a), std::polar(std::sqrt(1.0 - pa), arg_b), theta};
}

}  // namespace qwhit
