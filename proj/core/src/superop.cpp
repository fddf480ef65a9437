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

#include "qwhit/superop.hpp"

#include <cmath>
#include <string>

namespace qwhit::superop {
namespace {

constexpr double kProjectorTolerance = 1e-10;

DenseMatrix dense_kron(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  DenseMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

void check_density_matrix(const DenseMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) throw_invalid("density matrix has wrong dimension");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw_invalid("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw_invalid("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) throw_invalid("density matrix is not positive semidefinite");
}

}  // namespace

KrausMap::KrausMap(std::vector<DenseMatrix> ops) : dim_(0), ops_(std::move(ops)) {
  if (ops_.empty()) throw_invalid("Kraus map needs at least one operator");
  dim_ = static_cast<int>(ops_.front().rows());
  for (const auto& f : ops_) {
    if (f.rows() != dim_ || f.cols() != dim_) throw_invalid("Kraus operators must share one square dimension");
  }
}

bool KrausMap::is_trace_preserving(double tol) const {
  DenseMatrix sum = DenseMatrix::Zero(dim_, dim_);
  for (const auto& f : ops_) sum += f.adjoint() * f;
  return (sum - DenseMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol;
}

DenseMatrix KrausMap::apply(const DenseMatrix& rho) const {
  DenseMatrix out = DenseMatrix::Zero(dim_, dim_);
  for (const auto& f : ops_) out += f * rho * f.adjoint();
  return out;
}

SubspaceProjector::SubspaceProjector(DenseMatrix projector) : p_(std::move(projector)) {
  if (p_.rows() != p_.cols()) throw_invalid("projector must be square");
  if ((p_ * p_ - p_).cwiseAbs().maxCoeff() > kProjectorTolerance ||
      (p_.adjoint() - p_).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw_invalid("matrix is not an orthogonal projector");
  }
}

SubspaceProjector SubspaceProjector::onto_basis(int dim, const std::vector<int>& indices) {
  DenseMatrix p = DenseMatrix::Zero(dim, dim);
  for (int i : indices) {
    if (i < 0 || i >= dim) throw_invalid("projector basis index out of range");
    p(i, i) = 1.0;
  }
  return SubspaceProjector(std::move(p));
}

Vector max_entangled(int dim) {
  Vector omega = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int i = 0; i < dim; ++i) omega[i * dim + i] = 1.0;
  return omega;
}

Vector vectorize(const DenseMatrix& m) {
  Vector v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  }
  return v;
}

DenseMatrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw_invalid("unvectorize: length is not dim^2");
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
  }
  return m;
}

DenseMatrix matrix_representation(const KrausMap& map, int max_dim) {
  if (map.dim() > max_dim) {
    throw BudgetExceeded("matrix representation: D = " + std::to_string(map.dim()) +
                         " exceeds budget " + std::to_string(max_dim));
  }
  const Eigen::Index d2 = static_cast<Eigen::Index>(map.dim()) * map.dim();
  DenseMatrix out = DenseMatrix::Zero(d2, d2);
  for (const auto& f : map.ops()) out += dense_kron(f, f.conjugate());
  return out;
}

ShiftTransient split_shift_transient(const KrausMap& map, const SubspaceProjector& absorbing,
                                     const SubspaceProjector& transient) {
  if (absorbing.dim() != map.dim() || transient.dim() != map.dim()) {
    throw_invalid("projectors and Kraus map disagree in dimension");
  }
  const DenseMatrix& pb = absorbing.matrix();
  const DenseMatrix& pt = transient.matrix();
  if ((pb * pt).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw_invalid("absorbing and transient projectors are not orthogonal");
  }
  std::vector<DenseMatrix> shift;
  std::vector<DenseMatrix> trans;
  for (const auto& f : map.ops()) {
    shift.push_back(pb * f * pt);
    trans.push_back(pt * f * pt);
  }
  return {KrausMap(std::move(shift)), KrausMap(std::move(trans))};
}

double lemma1_hitting(const KrausMap& map, const SubspaceProjector& absorbing,
                      const SubspaceProjector& transient, const DenseMatrix& rho,
                      const Lemma1Options& options) {
  const int dim = map.dim();
  check_density_matrix(rho, dim);
  const ShiftTransient parts = split_shift_transient(map, absorbing, transient);
  const DenseMatrix m_shift = matrix_representation(parts.shift, options.max_dim);
  const DenseMatrix m_trans = matrix_representation(parts.transient, options.max_dim);

  // Power iteration of M_{F_t} runs through the Kraus form: O(D^3) per step
  // instead of the O(D^4) dense mat-vec.
  const LinearOperator op = [&parts, dim](const Vector& in, Vector& out) {
    out = vectorize(parts.transient.apply(unvectorize(in, dim)));
  };
  const SpectralEstimate radius = spectral_radius(op, static_cast<int>(m_trans.rows()), options.spectral);
  if (radius.value >= 1.0 - options.contraction_slack) {
    throw_invalid("transient operator not strictly contracting (spectral radius " +
                  std::to_string(radius.value) + ")");
  }

  const Eigen::Index d2 = m_trans.rows();
  const DenseMatrix system = DenseMatrix::Identity(d2, d2) - m_trans;
  const Vector x = system.partialPivLu().solve(vectorize(rho));
  const Vector shifted = m_shift * x;
  const Complex tail = max_entangled(dim).dot(shifted);
  const Complex direct = (absorbing.matrix() * rho).trace();
  const Complex total = direct + tail;
  if (std::abs(total.imag()) >= 1e-9) throw_internal("lemma1_hitting produced a complex probability");
  return total.real();
}

double lemma1_partial(const KrausMap& map, const SubspaceProjector& absorbing,
                      const SubspaceProjector& transient, const DenseMatrix& rho, int terms) {
  if (terms < 0) throw_invalid("lemma1_partial: K must be >= 0");
  const ShiftTransient parts = split_shift_transient(map, absorbing, transient);
  double total = (absorbing.matrix() * rho).trace().real();
  DenseMatrix state = rho;
  for (int m = 0; m <= terms; ++m) {
    total += parts.shift.apply(state).trace().real();
    state = parts.transient.apply(state);
  }
  return total;
}

KrausMap walk_channel(const WalkSpec& spec) {
  const int dim = spec.full_dim();
  DenseMatrix yes = DenseMatrix::Zero(dim, dim);
  for (int d = 0; d < 2; ++d) {
    const auto dir = static_cast<Direction>(d);
    yes(WalkSpec::index(0, dir), WalkSpec::index(0, dir)) = 1.0;
    yes(WalkSpec::index(spec.n(), dir), WalkSpec::index(spec.n(), dir)) = 1.0;
  }
  const DenseMatrix no = DenseMatrix::Identity(dim, dim) - yes;
  const DenseMatrix u = build_walk_unitary(spec).to_dense();
  return KrausMap({u * no, yes});
}

SubspaceProjector walk_transient_projector(const WalkSpec& spec) {
  std::vector<int> indices;
  for (int k = 1; k < spec.n(); ++k) {
    indices.push_back(WalkSpec::index(k, Direction::kLeft));
    indices.push_back(WalkSpec::index(k, Direction::kRight));
  }
  return SubspaceProjector::onto_basis(spec.full_dim(), indices);
}

SubspaceProjector walk_left_absorber(const WalkSpec& spec) {
  return SubspaceProjector::onto_basis(spec.full_dim(), {WalkSpec::index(0, Direction::kLeft)});
}

SubspaceProjector walk_right_absorber(const WalkSpec& spec) {
  return SubspaceProjector::onto_basis(spec.full_dim(), {WalkSpec::index(spec.n(), Direction::kRight)});
}

}  // namespace qwhit::superop
