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

#include "nosig/linalg.hpp"

#include "nosig/errors.hpp"

namespace nosig {

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector &a, const Vector &b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const Matrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_deviation(const Matrix &m) {
  return max_abs(m - m.adjoint());
}

Matrix hermitize(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

RealVector hermitian_eigenvalues(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix &hermitian) {
  return hermitian_eigenvalues(hermitian)(0);
}

HermitianEigen hermitian_eigen_sorted(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const Eigen::Index n = m.rows();
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Matrix orthonormal_completion(const Matrix &basis, int dim) {
  const int have = static_cast<int>(basis.cols());
  if (have > dim)
    throw DimensionError("orthonormal_completion: more columns than dim");
  const int need = dim - have;
  Matrix added(dim, need);
  int found = 0;
  for (int seed = 0; seed < dim && found < need; ++seed) {
    Vector v = Vector::Zero(dim);
    v(seed) = 1.0;
    // Two subtraction passes; one pass loses orthogonality near degeneracy.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < have; ++k)
        v -= basis.col(k).dot(v) * basis.col(k);
      for (int k = 0; k < found; ++k)
        v -= added.col(k).dot(v) * added.col(k);
    }
    const double norm = v.norm();
    if (norm > 1e-6)
      added.col(found++) = v / norm;
  }
  if (found != need)
    throw NumericalIntegrityError("orthonormal_completion: basis not filled");
  return added;
}

} // namespace nosig
