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

#include "qwhit/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

namespace qwhit {

SparseMatrix SparseMatrix::from_entries(int dim, std::vector<Entry> entries) {
  if (dim < 0) throw_invalid("sparse matrix dimension must be nonnegative");
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
      throw_invalid("sparse matrix entry out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });

  SparseMatrix m;
  m.dim_ = dim;
  m.row_offsets_.assign(static_cast<std::size_t>(dim) + 1, 0);
  m.col_indices_.reserve(entries.size());
  m.values_.reserve(entries.size());

  std::size_t i = 0;
  while (i < entries.size()) {
    const int row = entries[i].row;
    const int col = entries[i].col;
    Complex sum = 0.0;
    while (i < entries.size() && entries[i].row == row && entries[i].col == col) {
      sum += entries[i].value;
      ++i;
    }
    if (std::abs(sum) < kDropThreshold) continue;
    m.col_indices_.push_back(col);
    m.values_.push_back(sum);
    ++m.row_offsets_[row + 1];
  }
  for (int r = 0; r < dim; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

SparseMatrix SparseMatrix::identity(int dim) {
  std::vector<Entry> entries;
  entries.reserve(dim);
  for (int i = 0; i < dim; ++i) entries.push_back({i, i, 1.0});
  return from_entries(dim, std::move(entries));
}

SparseMatrix SparseMatrix::zero(int dim) { return from_entries(dim, {}); }

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw_invalid("sparse matrices are square");
  std::vector<Entry> entries;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c) != Complex(0.0)) entries.push_back({r, c, m(r, c)});
    }
  }
  return from_entries(static_cast<int>(m.rows()), std::move(entries));
}

Complex SparseMatrix::coeff(int row, int col) const {
  const auto begin = col_indices_.begin() + row_offsets_[row];
  const auto end = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

int SparseMatrix::max_row_nnz() const {
  int best = 0;
  for (int r = 0; r < dim_; ++r) best = std::max(best, row_nnz(r));
  return best;
}

void SparseMatrix::multiply(const Vector& x, Vector& y) const {
  if (x.size() != dim_) throw_invalid("multiply: dimension mismatch");
  y.resize(dim_);
  for (int r = 0; r < dim_; ++r) {
    Complex acc = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      acc += values_[k] * x[col_indices_[k]];
    }
    y[r] = acc;
  }
}

Vector SparseMatrix::multiply(const Vector& x) const {
  Vector y;
  multiply(x, y);
  return y;
}

void SparseMatrix::adjoint_multiply(const Vector& x, Vector& y) const {
  if (x.size() != dim_) throw_invalid("adjoint_multiply: dimension mismatch");
  y.setZero(dim_);
  for (int r = 0; r < dim_; ++r) {
    const Complex xr = x[r];
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      y[col_indices_[k]] += std::conj(values_[k]) * xr;
    }
  }
}

Vector SparseMatrix::adjoint_multiply(const Vector& x) const {
  Vector y;
  adjoint_multiply(x, y);
  return y;
}

SparseMatrix SparseMatrix::adjoint() const {
  std::vector<Entry> entries;
  entries.reserve(nnz());
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      entries.push_back({col_indices_[k], r, std::conj(values_[k])});
    }
  }
  return from_entries(dim_, std::move(entries));
}

SparseMatrix SparseMatrix::conjugate() const {
  SparseMatrix m = *this;
  for (auto& v : m.values_) v = std::conj(v);
  return m;
}

SparseMatrix SparseMatrix::scaled(Complex factor) const {
  std::vector<Entry> entries;
  entries.reserve(nnz());
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      entries.push_back({r, col_indices_[k], factor * values_[k]});
    }
  }
  return from_entries(dim_, std::move(entries));
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      d(r, col_indices_[k]) = values_[k];
    }
  }
  return d;
}

Eigen::SparseMatrix<Complex> SparseMatrix::to_eigen() const {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(nnz());
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      triplets.emplace_back(r, col_indices_[k], values_[k]);
    }
  }
  Eigen::SparseMatrix<Complex> m(dim_, dim_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

void SparseMatrix::write_coordinate(std::ostream& out) const {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << dim_ << ' ' << nnz() << '\n';
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      out << r << ' ' << col_indices_[k] << ' ' << values_[k].real() << ' '
          << values_[k].imag() << '\n';
    }
  }
  out.precision(old_precision);
}

SparseMatrix SparseMatrix::read_coordinate(std::istream& in) {
  long long dim = 0;
  long long count = 0;
  if (!(in >> dim >> count) || dim < 0 || count < 0) {
    throw_invalid("coordinate format: bad header");
  }
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    int r = 0;
    int c = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(in >> r >> c >> re >> im)) throw_invalid("coordinate format: truncated entry list");
    entries.push_back({r, c, Complex(re, im)});
  }
  return from_entries(static_cast<int>(dim), std::move(entries));
}

SparseMatrix kron(const SparseMatrix& lhs, const SparseMatrix& rhs) {
  const long long dim = static_cast<long long>(lhs.dim()) * rhs.dim();
  if (dim > std::numeric_limits<int>::max()) throw BudgetExceeded("kron: dimension overflow");
  const auto lo = lhs.row_offsets();
  const auto lc = lhs.col_indices();
  const auto lv = lhs.values();
  const auto ro = rhs.row_offsets();
  const auto rc = rhs.col_indices();
  const auto rv = rhs.values();

  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(lhs.nnz() * rhs.nnz());
  for (int i = 0; i < lhs.dim(); ++i) {
    for (int p = 0; p < rhs.dim(); ++p) {
      const int row = i * rhs.dim() + p;
      for (int k = lo[i]; k < lo[i + 1]; ++k) {
        for (int q = ro[p]; q < ro[p + 1]; ++q) {
          entries.push_back({row, lc[k] * rhs.dim() + rc[q], lv[k] * rv[q]});
        }
      }
    }
  }
  return SparseMatrix::from_entries(static_cast<int>(dim), std::move(entries));
}

SparseMatrix identity_minus(const SparseMatrix& m) {
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(m.nnz() + m.dim());
  const auto offsets = m.row_offsets();
  const auto cols = m.col_indices();
  const auto vals = m.values();
  for (int r = 0; r < m.dim(); ++r) {
    entries.push_back({r, r, 1.0});
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) entries.push_back({r, cols[k], -vals[k]});
  }
  return SparseMatrix::from_entries(m.dim(), std::move(entries));
}

double max_abs_difference(const SparseMatrix& lhs, const SparseMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw_invalid("max_abs_difference: dimension mismatch");
  const Eigen::SparseMatrix<Complex> diff = lhs.to_eigen() - rhs.to_eigen();
  double best = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(diff, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

}  // namespace qwhit
