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

#pragma once

#include <utility>
#include <vector>

#include "nosig/linalg.hpp"
#include "nosig/tolerances.hpp"

// Foundational state types. All values are immutable after construction;
// constructors validate the type invariants and throw InvalidState on
// violation. Composite indices are row-major with subsystem A as the slow
// (leftmost) factor: joint index = a * dimB + b, everywhere.

namespace nosig {

// Unit-norm complex vector.
class PureState {
public:
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector &amplitudes() const { return amplitudes_; }

  // |psi><psi|
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
  Vector amplitudes_;
};

// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
public:
  explicit DensityMatrix(Matrix matrix);

  static DensityMatrix pure(const PureState &psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix &matrix() const { return matrix_; }

  // Eigenvalues above the cutoff.
  int rank(double cutoff = tol::kSpectrumCutoff) const;

private:
  Matrix matrix_;
};

// Weighted list of pure states of equal dimension. Zero-weight members are
// dropped at construction; the remaining probabilities must sum to 1.
class Ensemble {
public:
  struct Member {
    double probability;
    PureState state;
  };

  explicit Ensemble(std::vector<Member> members);

  int dim() const { return members_.front().state.dim(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Member> &members() const { return members_; }
  const Member &member(int i) const { return members_.at(i); }

private:
  std::vector<Member> members_;
};

// Unit-norm pure state on a two-factor space.
class BipartiteState {
public:
  BipartiteState(int dim_a, int dim_b, Vector amplitudes);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const Vector &amplitudes() const { return amplitudes_; }

  Complex amplitude(int a, int b) const {
    return amplitudes_(static_cast<Eigen::Index>(a) * dim_b_ + b);
  }

  // Amplitudes reshaped to a dimA x dimB coefficient matrix.
  Matrix coefficient_matrix() const;

  DensityMatrix joint_density() const;

private:
  int dim_a_;
  int dim_b_;
  Vector amplitudes_;
};

// Biorthogonal expansion of a bipartite pure state. `coefficients` holds
// the squared Schmidt numbers (eigenvalues of the A-side reduction),
// descending; reconstruction is sum_k sqrt(coefficients[k]) left_k x right_k.
struct SchmidtDecomposition {
  int rank = 0;
  RealVector coefficients; // descending, each > cutoff, summing to 1
  Matrix left_vectors;     // dimA x rank, orthonormal columns
  Matrix right_vectors;    // dimB x rank, orthonormal columns
};

// Complete set of mutually orthogonal Hermitian idempotents summing to
// the identity.
class ProjectiveMeasurement {
public:
  ProjectiveMeasurement(int dim, std::vector<Matrix> projectors);

  // Rank-1 measurement in the computational basis.
  static ProjectiveMeasurement computational(int dim);
  // Rank-1 measurement onto the columns of a unitary.
  static ProjectiveMeasurement from_basis(const Matrix &basis_columns);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(projectors_.size()); }
  const Matrix &projector(int i) const { return projectors_.at(i); }
  const std::vector<Matrix> &projectors() const { return projectors_; }

private:
  int dim_;
  std::vector<Matrix> projectors_;
};

// |<a|b>|^2. Pure-state equality is always tested this way, never
// componentwise, so global phase cannot produce spurious mismatches.
double overlap(const PureState &a, const PureState &b);

// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const DensityMatrix &rho, const PureState &psi);

} // namespace nosig
