/**
 * This code is part of nosig.
 *
 * (C) Copyright nosig contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#include "nosig/types.hpp"

#include <algorithm>
#include <cmath>

#include "nosig/errors.hpp"

namespace nosig {

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1)
    throw InvalidState("PureState: dimension must be >= 1");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::kNorm)
    throw InvalidState("PureState: norm deviates from 1 by " +
                       std::to_string(std::abs(norm - 1.0)));
}

DensityMatrix::DensityMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols())
    throw InvalidState("DensityMatrix: matrix must be square, dim >= 1");
  const double herm = hermitian_deviation(matrix_);
  if (herm > tol::kHermitian)
    throw InvalidState("DensityMatrix: hermiticity deviation " +
                       std::to_string(herm));
  const double trace_dev = std::abs(matrix_.trace().real() - 1.0) +
                           std::abs(matrix_.trace().imag());
  if (trace_dev > tol::kTrace)
    throw InvalidState("DensityMatrix: trace deviates from 1 by " +
                       std::to_string(trace_dev));
  const double min_eig = min_eigenvalue(matrix_);
  if (min_eig < -tol::kPsdPerDim * static_cast<double>(matrix_.rows()))
    throw InvalidState("DensityMatrix: negative eigenvalue " +
                       std::to_string(min_eig));
}

DensityMatrix DensityMatrix::pure(const PureState &psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

int DensityMatrix::rank(double cutoff) const {
  const RealVector eigs = hermitian_eigenvalues(matrix_);
  int r = 0;
  for (Eigen::Index k = 0; k < eigs.size(); ++k)
    if (eigs(k) > cutoff)
      ++r;
  return r;
}

Ensemble::Ensemble(std::vector<Member> members) {
  for (auto &m : members) {
    if (m.probability < -1e-12)
      throw InvalidState("Ensemble: negative member probability");
    if (m.probability <= 1e-15)
      continue; // drop zero-weight members
    if (m.probability > 1.0 + 1e-12)
      throw InvalidState("Ensemble: member probability exceeds 1");
    members_.push_back(std::move(m));
  }
  if (members_.empty())
    throw InvalidState("Ensemble: no members with positive weight");
  const int d = members_.front().state.dim();
  double sum = 0.0;
  for (const auto &m : members_) {
    if (m.state.dim() != d)
      throw DimensionError("Ensemble: members of unequal dimension");
    sum += m.probability;
  }
  if (std::abs(sum - 1.0) > tol::kProbSum)
    throw InvalidState("Ensemble: probabilities sum to " + std::to_string(sum));
}

BipartiteState::BipartiteState(int dim_a, int dim_b, Vector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
  if (dim_a_ < 1 || dim_b_ < 1)
    throw InvalidState("BipartiteState: dimensions must be >= 1");
  if (amplitudes_.size() != static_cast<Eigen::Index>(dim_a_) * dim_b_)
    throw DimensionError("BipartiteState: amplitude length != dimA*dimB");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::kNorm)
    throw InvalidState("BipartiteState: norm deviates from 1 by " +
                       std::to_string(std::abs(norm - 1.0)));
}

Matrix BipartiteState::coefficient_matrix() const {
  Matrix m(dim_a_, dim_b_);
  for (int a = 0; a < dim_a_; ++a)
    for (int b = 0; b < dim_b_; ++b)
      m(a, b) = amplitude(a, b);
  return m;
}

DensityMatrix BipartiteState::joint_density() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint());
}

ProjectiveMeasurement::ProjectiveMeasurement(int dim,
                                             std::vector<Matrix> projectors)
    : dim_(dim), projectors_(std::move(projectors)) {
  if (projectors_.empty())
    throw InvalidState("ProjectiveMeasurement: no projectors");
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const Matrix &p = projectors_[i];
    if (p.rows() != dim_ || p.cols() != dim_)
      throw DimensionError("ProjectiveMeasurement: projector dimension");
    if (hermitian_deviation(p) > tol::kProjector)
      throw InvalidState("ProjectiveMeasurement: projector not Hermitian");
    if (max_abs(p * p - p) > tol::kProjector)
      throw InvalidState("ProjectiveMeasurement: projector not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      if (max_abs(p * projectors_[j]) > tol::kProjector)
        throw InvalidState("ProjectiveMeasurement: projectors not orthogonal");
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(dim_, dim_)) > tol::kProjector)
    throw InvalidState("ProjectiveMeasurement: projectors do not sum to 1");
}

ProjectiveMeasurement ProjectiveMeasurement::computational(int dim) {
  return from_basis(Matrix::Identity(dim, dim));
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(
    const Matrix &basis_columns) {
  const int dim = static_cast<int>(basis_columns.rows());
  std::vector<Matrix> projectors;
  projectors.reserve(basis_columns.cols());
  for (Eigen::Index i = 0; i < basis_columns.cols(); ++i)
    projectors.push_back(basis_columns.col(i) * basis_columns.col(i).adjoint());
  return ProjectiveMeasurement(dim, std::move(projectors));
}

double overlap(const PureState &a, const PureState &b) {
  if (a.dim() != b.dim())
    throw DimensionError("overlap: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const DensityMatrix &rho, const PureState &psi) {
  if (rho.dim() != psi.dim())
    throw DimensionError("fidelity: dimension mismatch");
  const double f =
      (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0).real();
  return std::clamp(f, 0.0, 1.0);
}

} // namespace nosig
