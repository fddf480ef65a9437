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
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwhit/sparse_matrix.hpp"

namespace qwhit {
namespace {

SparseMatrix random_sparse(std::mt19937_64& rng, int dim, int per_row) {
  std::uniform_int_distribution<int> col(0, dim - 1);
  std::normal_distribution<double> gauss;
  std::vector<SparseMatrix::Entry> entries;
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < per_row; ++k) entries.push_back({r, col(rng), Complex(gauss(rng), gauss(rng))});
  }
  return SparseMatrix::from_entries(dim, std::move(entries));
}

TEST(SparseMatrix, DuplicateEntriesAreSummed) {
  const auto m = SparseMatrix::from_entries(2, {{0, 1, 1.0}, {0, 1, Complex(0.0, 2.0)}, {1, 0, 3.0}});
  EXPECT_EQ(m.nnz(), 2u);
  EXPECT_EQ(m.coeff(0, 1), Complex(1.0, 2.0));
  EXPECT_EQ(m.coeff(1, 0), Complex(3.0));
  EXPECT_EQ(m.coeff(1, 1), Complex(0.0));
}

TEST(SparseMatrix, OutOfRangeEntryRejected) {
  EXPECT_THROW(SparseMatrix::from_entries(2, {{2, 0, 1.0}}), InvalidArgument);
  EXPECT_THROW(SparseMatrix::from_entries(2, {{0, -1, 1.0}}), InvalidArgument);
}

TEST(SparseMatrix, MultiplyMatchesDense) {
  std::mt19937_64 rng(11);
  const auto m = random_sparse(rng, 23, 4);
  const DenseMatrix d = m.to_dense();
  const Vector x = testing::random_state(rng, 23);
  EXPECT_LT((m.multiply(x) - d * x).norm(), 1e-12);
  EXPECT_LT((m.adjoint_multiply(x) - d.adjoint() * x).norm(), 1e-12);
  EXPECT_LT((m.adjoint().to_dense() - d.adjoint()).norm(), 1e-12);
  EXPECT_LT((m.conjugate().to_dense() - d.conjugate()).norm(), 1e-12);
  EXPECT_LT((m.scaled(Complex(0.0, 2.0)).to_dense() - Complex(0.0, 2.0) * d).norm(), 1e-12);
}

TEST(SparseMatrix, KronMatchesDense) {
  std::mt19937_64 rng(5);
  const auto a = random_sparse(rng, 5, 2);
  const auto b = random_sparse(rng, 7, 3);
  const DenseMatrix expected = testing::dense_kron(a.to_dense(), b.to_dense());
  EXPECT_LT((kron(a, b).to_dense() - expected).norm(), 1e-12);
}

TEST(SparseMatrix, IdentityMinus) {
  std::mt19937_64 rng(8);
  const auto m = random_sparse(rng, 9, 3);
  const DenseMatrix expected = DenseMatrix::Identity(9, 9) - m.to_dense();
  EXPECT_LT((identity_minus(m).to_dense() - expected).norm(), 1e-12);
}

TEST(SparseMatrix, MaxRowNonzeros) {
  const auto m = SparseMatrix::from_entries(3, {{0, 0, 1.0}, {0, 2, 1.0}, {2, 1, 1.0}});
  EXPECT_EQ(m.max_row_nnz(), 2);
  EXPECT_EQ(m.row_nnz(1), 0);
  EXPECT_EQ(SparseMatrix::zero(4).max_row_nnz(), 0);
}

TEST(SparseMatrix, CoordinateRoundTrip) {
  std::mt19937_64 rng(3);
  const auto m = random_sparse(rng, 12, 3);
  std::stringstream buf;
  m.write_coordinate(buf);
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header, "12 " + std::to_string(m.nnz()));
  buf.seekg(0);
  const auto back = SparseMatrix::read_coordinate(buf);
  EXPECT_EQ(max_abs_difference(m, back), 0.0);
}

TEST(SparseMatrix, CoordinateRejectsTruncatedInput) {
  std::stringstream buf("3 2\n0 0 1 0\n");
  EXPECT_THROW(SparseMatrix::read_coordinate(buf), InvalidArgument);
}

TEST(SparseMatrix, MaxAbsDifferenceOnEmptyMatrices) {
  EXPECT_EQ(max_abs_difference(SparseMatrix::zero(3), SparseMatrix::zero(3)), 0.0);
  EXPECT_EQ(max_abs_difference(SparseMatrix::identity(3), SparseMatrix::zero(3)), 1.0);
}

}  // namespace
}  // namespace qwhit
