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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "qwhit/error.hpp"

namespace qwhit {

/// Square complex matrix in compressed-row layout.
///
/// Column indices are strictly increasing within a row and no explicit zeros
/// are stored: entries with magnitude below kDropThreshold are removed on
/// construction. Instances are immutable once built.
class SparseMatrix {
 public:
  static constexpr double kDropThreshold = 1e-300;

  struct Entry {
    int row;
    int col;
    Complex value;
  };

  SparseMatrix() = default;

  /// Builds from unordered coordinate entries; duplicates are summed.
  static SparseMatrix from_entries(int dim, std::vector<Entry> entries);
  static SparseMatrix identity(int dim);
  static SparseMatrix zero(int dim);
  static SparseMatrix from_dense(const DenseMatrix& m);

  int dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> col_indices() const { return col_indices_; }
  std::span<const Complex> values() const { return values_; }

  /// Stored value at (row, col), zero when absent.
  Complex coeff(int row, int col) const;
  int row_nnz(int row) const { return row_offsets_[row + 1] - row_offsets_[row]; }
  int max_row_nnz() const;

  /// y = A x
  void multiply(const Vector& x, Vector& y) const;
  Vector multiply(const Vector& x) const;
  /// y = A^dagger x, without forming the adjoint.
  void adjoint_multiply(const Vector& x, Vector& y) const;
  Vector adjoint_multiply(const Vector& x) const;

  SparseMatrix adjoint() const;
  SparseMatrix conjugate() const;
  SparseMatrix scaled(Complex factor) const;

  DenseMatrix to_dense() const;
  Eigen::SparseMatrix<Complex> to_eigen() const;

  /// Coordinate text export: header "D nnz", then one "row col re im" line per
  /// nonzero with 0-based indices, row-major order.
  void write_coordinate(std::ostream& out) const;
  static SparseMatrix read_coordinate(std::istream& in);

 private:
  int dim_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<Complex> values_;
};

/// Kronecker product computed on the sparse structure, never densified.
SparseMatrix kron(const SparseMatrix& lhs, const SparseMatrix& rhs);

/// I - m
SparseMatrix identity_minus(const SparseMatrix& m);

/// Largest entry-wise magnitude of lhs - rhs.
double max_abs_difference(const SparseMatrix& lhs, const SparseMatrix& rhs);

}  // namespace qwhit
