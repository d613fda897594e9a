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

#include <complex>

#include <Eigen/Dense>

namespace nosig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Kronecker product, row-major index convention (left factor is slow).
Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(const Vector &a, const Vector &b);

// Largest absolute entry.
double max_abs(const Matrix &m);

// Max-abs deviation from the conjugate transpose.
double hermitian_deviation(const Matrix &m);

// (m + m^dagger) / 2. Only used to strip roundoff-level asymmetry.
Matrix hermitize(const Matrix &m);

// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const Matrix &m);

double min_eigenvalue(const Matrix &hermitian);

struct HermitianEigen {
  RealVector values; // descending
  Matrix vectors;    // columns, matching order
};

// Full eigendecomposition of a Hermitian matrix, eigenvalues descending.
HermitianEigen hermitian_eigen_sorted(const Matrix &m);

// Extend `basis` (orthonormal columns in C^dim) to a full orthonormal
// basis of C^dim. Completion columns are derived from the computational
// basis by re-orthogonalized (two-pass) Gram-Schmidt, so the result is
// deterministic. Returns only the added columns.
Matrix orthonormal_completion(const Matrix &basis, int dim);

} // namespace nosig
