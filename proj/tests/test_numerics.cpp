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

#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwhit/kappa.hpp"
#include "qwhit/reduction.hpp"
#include "qwhit/solvers.hpp"
#include "qwhit/spectral.hpp"

namespace qwhit {
namespace {

// Diagonally dominant, so comfortably invertible.
SparseMatrix well_conditioned(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> col(0, dim - 1);
  std::normal_distribution<double> gauss;
  std::vector<SparseMatrix::Entry> entries;
  for (int r = 0; r < dim; ++r) {
    entries.push_back({r, r, Complex(6.0 + gauss(rng), gauss(rng))});
    for (int k = 0; k < 3; ++k) entries.push_back({r, col(rng), Complex(gauss(rng), gauss(rng)) * 0.5});
  }
  return SparseMatrix::from_entries(dim, std::move(entries));
}

SparseMatrix diagonal(std::initializer_list<double> values) {
  std::vector<SparseMatrix::Entry> entries;
  int i = 0;
  for (double v : values) {
    entries.push_back({i, i, v});
    ++i;
  }
  return SparseMatrix::from_entries(i, std::move(entries));
}

TEST(LuSolve, IdentityAndDiagonal) {
  std::mt19937_64 rng(1);
  const Vector b = testing::random_state(rng, 6);
  const SolveReport id = lu_solve(SparseMatrix::identity(6), b);
  EXPECT_LT((id.solution - b).norm(), 1e-15);
  EXPECT_LT(id.residual_norm, 1e-15);
  const SolveReport half = lu_solve(diagonal({2, 2, 2, 2, 2, 2}), b);
  EXPECT_LT((half.solution - b / 2.0).norm(), 1e-15);
}

TEST(LuSolve, RecoversConstructedSolution) {
  std::mt19937_64 rng(2);
  const SparseMatrix a = well_conditioned(rng, 60);
  const Vector x = testing::random_state(rng, 60);
  const SolveReport r = lu_solve(a, a.multiply(x));
  EXPECT_LT((r.solution - x).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_TRUE(r.converged);
}

TEST(LuSolve, BudgetAndSingularity) {
  EXPECT_THROW(lu_solve(SparseMatrix::identity(10), Vector::Ones(10), 8), BudgetExceeded);
  EXPECT_THROW(lu_solve(diagonal({1, 0, 1}), Vector::Ones(3)), SingularMatrix);
}

TEST(SparseLu, MatchesDenseAndSolvesAdjoint) {
  std::mt19937_64 rng(3);
  const SparseMatrix a = well_conditioned(rng, 80);
  const Vector b = testing::random_state(rng, 80);
  const SparseLu lu(a);
  const DenseMatrix d = a.to_dense();
  EXPECT_LT((d * lu.solve(b) - b).norm(), 1e-12);
  EXPECT_LT((d.adjoint() * lu.solve_adjoint(b) - b).norm(), 1e-12);
  const SolveReport r = sparse_lu_solve(a, b);
  EXPECT_LT(r.residual_norm, 1e-12);
}

TEST(Cgnr, IdentityConvergesImmediately) {
  std::mt19937_64 rng(4);
  const Vector b = testing::random_state(rng, 10);
  const SolveReport r = cgnr_solve(SparseMatrix::identity(10), b, 1e-12, 100);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT((r.solution - b).norm(), 1e-14);
}

TEST(Cgnr, WalkSystemAgreesWithLu) {
  const WalkSpec spec(10, Coin::hadamard());
  const SparseMatrix a = build_A(spec);
  const Vector b = build_b(spec, InitialState::basis(1, Direction::kLeft));
  const Vector y = build_probe(spec);
  const SolveReport cg = cgnr_solve(a, b, 1e-12, 100000);
  const SolveReport lu = lu_solve(a, b);
  ASSERT_TRUE(cg.converged);
  EXPECT_NEAR(y.dot(cg.solution).real(), y.dot(lu.solution).real(), 1e-8);
  // Convergence claim re-verified independently of the solver.
  EXPECT_LE((a.to_dense() * cg.solution - b).norm(), 1e-12 * b.norm() * (1 + 1e-9));
}

TEST(Cgnr, IterationCountGrowsWithN) {
  long previous = 0;
  for (int n : {5, 10, 20, 40}) {
    const WalkSpec spec(n, Coin::hadamard());
    const SolveReport r =
        cgnr_solve(build_A(spec), build_b(spec, InitialState::basis(1, Direction::kLeft)), 1e-10, 1'000'000);
    ASSERT_TRUE(r.converged) << n;
    EXPECT_GT(r.iterations, previous) << n;
    previous = r.iterations;
  }
}

TEST(Cgnr, NonConvergenceIsFlaggedWithBestIterate) {
  const WalkSpec spec(20, Coin::hadamard());
  const SparseMatrix a = build_A(spec);
  const Vector b = build_b(spec, InitialState::basis(1, Direction::kLeft));
  const SolveReport r = cgnr_solve(a, b, 1e-14, 5);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_NEAR(r.residual_norm, residual_norm(a, r.solution, b), 1e-15);
  EXPECT_LT(r.residual_norm, b.norm());
  EXPECT_THROW(cgnr_solve(a, b, 0.0, 5), InvalidArgument);
}

TEST(SigmaExtremes, SmallExamples) {
  const SigmaExtremes id = sigma_extremes(SparseMatrix::identity(5));
  EXPECT_NEAR(id.sigma_max, 1.0, 1e-9);
  EXPECT_NEAR(id.sigma_min, 1.0, 1e-9);
  EXPECT_TRUE(id.converged);
  const SigmaExtremes d = sigma_extremes(diagonal({3, 1}));
  EXPECT_NEAR(d.sigma_max, 3.0, 3e-6);
  EXPECT_NEAR(d.sigma_min, 1.0, 1e-6);
  EXPECT_NEAR(d.kappa(), 3.0, 1e-5);
  EXPECT_THROW(sigma_extremes(SparseMatrix::zero(3)), InvalidArgument);
}

class SigmaAgainstSvd : public ::testing::TestWithParam<std::tuple<SigmaMethod, InnerSolve>> {};

TEST_P(SigmaAgainstSvd, WalkMatrices) {
  const auto [method, inner] = GetParam();
  std::mt19937_64 rng(5);
  const Coin coins[] = {Coin::hadamard(), Coin{std::sqrt(0.5), std::sqrt(0.5), 0.0}, random_coin(rng)};
  for (const Coin& c : coins) {
    for (int n : {3, 6, 9, 12}) {
      if (method == SigmaMethod::kPower && n > 9) continue;
      const SparseMatrix a = build_A(WalkSpec(n, c));
      const Eigen::VectorXd sv = Eigen::BDCSVD<DenseMatrix>(a.to_dense()).singularValues();
      SigmaOptions options;
      options.method = method;
      options.inner = inner;
      options.max_iters = 2'000'000;
      const SigmaExtremes s = sigma_extremes(a, options);
      EXPECT_TRUE(s.converged) << n;
      EXPECT_NEAR(s.sigma_max / sv[0], 1.0, 1e-5) << n;
      EXPECT_NEAR(s.sigma_min / sv[sv.size() - 1], 1.0, 1e-5) << n;
      EXPECT_NEAR(s.kappa(), s.sigma_max / s.sigma_min, 1e-9 * s.kappa());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Methods, SigmaAgainstSvd,
                         ::testing::Values(std::make_tuple(SigmaMethod::kLanczos, InnerSolve::kDirect),
                                           std::make_tuple(SigmaMethod::kLanczos, InnerSolve::kCgnr),
                                           std::make_tuple(SigmaMethod::kPower, InnerSolve::kDirect)));

TEST(SigmaExtremes, BoundsAgainstProbes) {
  std::mt19937_64 rng(6);
  const SparseMatrix a = build_A(WalkSpec(8, random_coin(rng)));
  const SigmaExtremes s = sigma_extremes(a);
  for (int i = 0; i < 50; ++i) {
    const Vector x = testing::random_state(rng, a.dim());
    const double ratio = a.multiply(x).norm();
    EXPECT_LE(ratio, s.sigma_max * (1 + 1e-6));
    EXPECT_GE(ratio, s.sigma_min * (1 - 1e-6));
  }
}

TEST(SigmaExtremes, KappaInvariantUnderPhase) {
  const SparseMatrix a = build_A(WalkSpec(7, Coin::hadamard()));
  const double k = sigma_extremes(a).kappa();
  const double k_phase = sigma_extremes(a.scaled(std::polar(1.0, 0.7))).kappa();
  EXPECT_NEAR(k_phase / k, 1.0, 1e-6);
}

TEST(SpectralRadius, EqualModulusEigenvalues) {
  // Rotation-like spectrum {0.9 i, -0.9 i, 0.9, 0.5}: the one-step growth
  // ratio of power iteration oscillates here.
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 1) = -0.9;
  m(1, 0) = 0.9;
  m(2, 2) = 0.9;
  m(3, 3) = 0.5;
  const SparseMatrix sm = SparseMatrix::from_dense(m);
  const LinearOperator op = [&sm](const Vector& in, Vector& out) { sm.multiply(in, out); };
  const SpectralEstimate e = spectral_radius(op, 4, {1e-8, 100000});
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, 0.9, 1e-6);
}

TEST(SpectralRadius, WalkSuperoperatorIsSquareOfWalkBlock) {
  std::mt19937_64 rng(7);
  for (int n : {3, 5, 8}) {
    const WalkSpec spec(n, random_coin(rng));
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<DenseMatrix>(build_M(spec).to_dense()).eigenvalues();
    const double rho_m = ev.cwiseAbs().maxCoeff();
    const SpectralEstimate e = transient_spectral_radius(spec, {1e-9, 2'000'000});
    EXPECT_NEAR(e.value, rho_m * rho_m, 1e-6) << n;
    EXPECT_LT(e.value, 1.0);
    const SpectralEstimate p = transient_spectral_radius_product(spec, {1e-7, 1L << 26});
    EXPECT_TRUE(p.converged);
    EXPECT_NEAR(p.value, rho_m * rho_m, 1e-5) << n;
  }
}

TEST(Lanczos, MatchesDenseEigenvalue) {
  std::mt19937_64 rng(8);
  const DenseMatrix g = testing::random_matrix(rng, 40);
  const DenseMatrix psd = g.adjoint() * g;
  const double expected = Eigen::SelfAdjointEigenSolver<DenseMatrix>(psd).eigenvalues().maxCoeff();
  const LinearOperator op = [&psd](const Vector& in, Vector& out) { out = psd * in; };
  const SpectralEstimate e = largest_eigenvalue_lanczos(op, 40, {1e-10, 10000});
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value / expected, 1.0, 1e-9);
}

}  // namespace
}  // namespace qwhit
