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

#include "qwhit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <random>

#include "qwhit/solvers.hpp"

namespace qwhit {
namespace {

Vector random_unit_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    v[i] = Complex(re, gauss(rng));
  }
  return v / v.norm();
}

void check_options(const SpectralOptions& options, int dim) {
  if (dim <= 0) throw_invalid("spectral estimate of an empty operator");
  if (!(options.tol > 0.0)) throw_invalid("spectral tolerance must be positive");
  if (options.max_iters < 1) throw_invalid("spectral max_iters must be >= 1");
}

// Number of eigenvalues of the symmetric tridiagonal (alpha, beta) below x.
int sturm_count(const std::vector<double>& alpha, const std::vector<double>& beta, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double off = j == 0 ? 0.0 : beta[j - 1] * beta[j - 1];
    d = alpha[j] - x - (j == 0 ? 0.0 : off / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

// Largest eigenvalue by bisection; `lower` is a known lower bound.
double top_tridiagonal_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta,
                                  double lower) {
  const std::size_t k = alpha.size();
  double lo = lower;
  double hi = lower;
  for (std::size_t j = 0; j < k; ++j) {
    const double left = j == 0 ? 0.0 : std::abs(beta[j - 1]);
    const double right = j + 1 < k ? std::abs(beta[j]) : 0.0;
    hi = std::max(hi, alpha[j] + left + right);
    lo = std::min(lo, alpha[j] - left - right);
  }
  lo = std::max(lo, lower);
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(hi), std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(alpha, beta, mid) < static_cast<int>(k)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Last component of the normalized eigenvector for eigenvalue theta, by two
// steps of inverse iteration on (sigma I - T) with sigma just above theta.
double last_eigenvector_component(const std::vector<double>& alpha, const std::vector<double>& beta,
                                  double theta) {
  const std::size_t k = alpha.size();
  if (k == 1) return 1.0;
  const double sigma = theta + std::max(1e-13 * std::abs(theta), 1e-300);
  std::vector<double> x(k, 1.0);
  std::vector<double> c(k);
  std::vector<double> d(k);
  for (int round = 0; round < 2; ++round) {
    // Thomas algorithm; sigma I - T is positive definite.
    double diag = sigma - alpha[0];
    c[0] = -beta[0] / diag;
    d[0] = x[0] / diag;
    for (std::size_t j = 1; j < k; ++j) {
      diag = sigma - alpha[j] + beta[j - 1] * c[j - 1];
      c[j] = j + 1 < k ? -beta[j] / diag : 0.0;
      d[j] = (x[j] + beta[j - 1] * d[j - 1]) / diag;
    }
    x[k - 1] = d[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) x[j] = d[j] - c[j] * x[j + 1];
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    for (double& xi : x) xi /= norm;
  }
  return x[k - 1];
}

}  // namespace

SpectralEstimate spectral_radius(const LinearOperator& op, int dim, const SpectralOptions& options) {
  check_options(options, dim);
  Vector v = random_unit_vector(dim, options.seed);
  Vector w;

  // Mass has to spread over the operator's support before growth rates mean
  // anything; short windows can agree by accident during that transient.
  const long burn_in = std::min<long>(2L * dim, options.max_iters / 2);
  long window = 16;
  long count = 0;
  int agreements = 0;
  double log_sum = 0.0;
  std::optional<double> previous;
  SpectralEstimate est;
  while (est.iterations < options.max_iters) {
    op(v, w);
    ++est.iterations;
    const double growth = w.norm();
    if (growth == 0.0) {
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    if (!std::isfinite(growth)) throw_internal("power iteration diverged to a non-finite norm");
    v = w / growth;
    if (est.iterations <= burn_in) continue;
    log_sum += std::log(growth);
    if (++count < window) continue;

    const double current = std::exp(log_sum / static_cast<double>(count));
    est.value = current;
    if (previous && std::abs(current - *previous) <= options.tol * current) {
      if (++agreements == 2) {
        est.converged = true;
        return est;
      }
    } else {
      agreements = 0;
    }
    previous = current;
    window *= 2;
    count = 0;
    log_sum = 0.0;
  }
  if (!previous && count > 0) est.value = std::exp(log_sum / static_cast<double>(count));
  return est;
}

SpectralEstimate largest_eigenvalue_psd(const LinearOperator& op, int dim,
                                        const SpectralOptions& options) {
  check_options(options, dim);
  Vector v = random_unit_vector(dim, options.seed);
  Vector w;
  SpectralEstimate est;
  while (est.iterations < options.max_iters) {
    op(v, w);
    ++est.iterations;
    const double lambda = v.dot(w).real();
    const double wnorm = w.norm();
    if (wnorm == 0.0) {
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    if (!std::isfinite(wnorm)) throw_internal("power iteration diverged to a non-finite norm");
    est.value = lambda;
    if ((w - lambda * v).norm() <= options.tol * std::abs(lambda)) {
      est.converged = true;
      return est;
    }
    v = w / wnorm;
  }
  return est;
}

SpectralEstimate largest_eigenvalue_lanczos(const LinearOperator& op, int dim,
                                            const SpectralOptions& options, int check_every) {
  check_options(options, dim);
  if (check_every < 1) throw_invalid("lanczos: check_every must be >= 1");
  std::vector<double> alpha;
  std::vector<double> beta;
  Vector previous = Vector::Zero(dim);
  Vector current = random_unit_vector(dim, options.seed);
  Vector w;
  double theta = 0.0;
  SpectralEstimate est;

  while (est.iterations < options.max_iters) {
    op(current, w);
    ++est.iterations;
    if (!w.allFinite()) throw_internal("lanczos: operator produced non-finite values");
    const double a = current.dot(w).real();
    w -= a * current;
    if (!beta.empty()) w -= beta.back() * previous;
    alpha.push_back(a);
    const double b = w.norm();
    const bool invariant = b <= 1e-14 * std::max(std::abs(a), 1e-300) || static_cast<int>(alpha.size()) == dim;

    if (invariant || alpha.size() % static_cast<std::size_t>(check_every) == 0 ||
        est.iterations == options.max_iters) {
      theta = top_tridiagonal_eigenvalue(alpha, beta, theta);
      est.value = theta;
      const double residual = invariant ? 0.0 : b * std::abs(last_eigenvector_component(alpha, beta, theta));
      if (residual <= options.tol * std::abs(theta)) {
        est.converged = true;
        return est;
      }
    }
    if (invariant) break;
    beta.push_back(b);
    previous.swap(current);
    current = w / b;
  }
  return est;
}

SigmaExtremes sigma_extremes(const SparseMatrix& a, const SigmaOptions& options) {
  if (a.nnz() == 0) throw_invalid("sigma_extremes: matrix is zero");
  const int dim = a.dim();
  SpectralOptions spectral{options.tol, options.max_iters, options.seed};

  Vector scratch(dim);
  const LinearOperator gram = [&a, &scratch](const Vector& in, Vector& out) {
    a.multiply(in, scratch);
    a.adjoint_multiply(scratch, out);
  };
  const auto top_eigenvalue = [&options, &spectral, dim](const LinearOperator& op) {
    return options.method == SigmaMethod::kLanczos ? largest_eigenvalue_lanczos(op, dim, spectral)
                                                   : largest_eigenvalue_psd(op, dim, spectral);
  };
  const SpectralEstimate top = top_eigenvalue(gram);

  const bool direct = options.inner == InnerSolve::kDirect ||
                      (options.inner == InnerSolve::kAuto && dim <= options.direct_budget);
  SpectralEstimate bottom;
  if (direct) {
    const SparseLu lu(a);
    const LinearOperator inverse_gram = [&lu](const Vector& in, Vector& out) {
      out = lu.solve(lu.solve_adjoint(in));
    };
    bottom = top_eigenvalue(inverse_gram);
  } else {
    const SparseMatrix adjoint = a.adjoint();
    const double inner_tol = std::min(1e-10, 1e-3 * options.tol);
    bool inner_ok = true;
    const LinearOperator inverse_gram = [&](const Vector& in, Vector& out) {
      const SolveReport y = cgnr_solve(adjoint, in, inner_tol, 50L * dim);
      const SolveReport x = cgnr_solve(a, y.solution, inner_tol, 50L * dim);
      inner_ok = inner_ok && y.converged && x.converged;
      out = x.solution;
    };
    bottom = top_eigenvalue(inverse_gram);
    bottom.converged = bottom.converged && inner_ok;
  }

  SigmaExtremes out;
  out.sigma_max = std::sqrt(std::max(top.value, 0.0));
  out.sigma_min = bottom.value > 0.0 ? 1.0 / std::sqrt(bottom.value) : 0.0;
  out.iters_max = top.iterations;
  out.iters_min = bottom.iterations;
  out.converged = top.converged && bottom.converged;
  return out;
}

}  // namespace qwhit
