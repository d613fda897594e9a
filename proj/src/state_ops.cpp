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

#include "nosig/state_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nosig/errors.hpp"

namespace nosig {

PureState tensor(const PureState &a, const PureState &b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, Subsystem keep,
                            int dim_a, int dim_b) {
  if (rho.dim() != dim_a * dim_b)
    throw DimensionError("partial_trace: rho.dim != dimA*dimB");
  const Matrix &m = rho.matrix();
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a1 = 0; a1 < dim_a; ++a1)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b = 0; b < dim_b; ++b)
          out(a1, a2) += m(a1 * dim_b + b, a2 * dim_b + b);
    return DensityMatrix(hermitize(out));
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int b1 = 0; b1 < dim_b; ++b1)
    for (int b2 = 0; b2 < dim_b; ++b2)
      for (int a = 0; a < dim_a; ++a)
        out(b1, b2) += m(a * dim_b + b1, a * dim_b + b2);
  return DensityMatrix(hermitize(out));
}

DensityMatrix ensemble_density(const Ensemble &e) {
  Matrix rho = Matrix::Zero(e.dim(), e.dim());
  for (const auto &m : e.members())
    rho += m.probability * m.state.projector();
  return DensityMatrix(hermitize(rho));
}

SchmidtDecomposition schmidt(const BipartiteState &psi, double cutoff) {
  const Matrix m = psi.coefficient_matrix();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // Eigen factors M = U S V.adjoint(), so the Schmidt partners on B are
  // the conjugated V columns.
  const RealVector s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) * s(k) > cutoff)
      ++rank;
  if (rank < 1)
    rank = 1; // norm 1 guarantees at least one nonzero singular value
  SchmidtDecomposition d;
  d.rank = rank;
  d.coefficients = RealVector(rank);
  d.left_vectors = Matrix(psi.dim_a(), rank);
  d.right_vectors = Matrix(psi.dim_b(), rank);
  for (int k = 0; k < rank; ++k) {
    d.coefficients(k) = s(k) * s(k);
    d.left_vectors.col(k) = svd.matrixU().col(k);
    d.right_vectors.col(k) = svd.matrixV().col(k).conjugate();
  }
  return d;
}

BipartiteState purify(const DensityMatrix &rho) {
  const HermitianEigen eig = hermitian_eigen_sorted(rho.matrix());
  const int dim_a = rho.dim();
  int rank = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > tol::kSpectrumCutoff)
      ++rank;
  if (rank < 1)
    rank = 1;
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(dim_a) * rank);
  for (int k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(eig.values(k), 0.0));
    for (int a = 0; a < dim_a; ++a)
      amp(a * rank + k) += w * eig.vectors(a, k);
  }
  amp /= amp.norm();
  return BipartiteState(dim_a, rank, amp);
}

double joint_probability(const DensityMatrix &rho_ab, const Matrix &p_a,
                         const Matrix &p_b) {
  if (p_a.rows() != p_a.cols() || p_b.rows() != p_b.cols())
    throw DimensionError("joint_probability: projectors must be square");
  if (rho_ab.dim() != p_a.rows() * p_b.rows())
    throw DimensionError("joint_probability: dimension mismatch");
  const Complex tr = (rho_ab.matrix() * kron(p_a, p_b)).trace();
  double p = tr.real();
  if (p < -1e-10 || p > 1.0 + 1e-10)
    throw NumericalIntegrityError("joint_probability: value " +
                                  std::to_string(p) + " outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

Conditional conditional_state(const DensityMatrix &rho_ab, const Matrix &p_b,
                              int dim_a, int dim_b) {
  if (p_b.rows() != dim_b || p_b.cols() != dim_b)
    throw DimensionError("conditional_state: projector dimension");
  if (rho_ab.dim() != dim_a * dim_b)
    throw DimensionError("conditional_state: rho.dim != dimA*dimB");
  const Matrix &m = rho_ab.matrix();
  // Tr_B[rho (1 (x) P_B)] without forming the joint product.
  Matrix num = Matrix::Zero(dim_a, dim_a);
  for (int a1 = 0; a1 < dim_a; ++a1)
    for (int a2 = 0; a2 < dim_a; ++a2)
      for (int b1 = 0; b1 < dim_b; ++b1)
        for (int b2 = 0; b2 < dim_b; ++b2)
          num(a1, a2) += m(a1 * dim_b + b1, a2 * dim_b + b2) * p_b(b2, b1);
  num = hermitize(num);
  const double p = num.trace().real();
  Conditional c;
  c.probability = std::clamp(p, 0.0, 1.0);
  if (p > 1e-12)
    c.state = DensityMatrix(num / p);
  return c;
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionError("trace_distance: dimension mismatch");
  const RealVector eigs = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  const double d = 0.5 * eigs.cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

} // namespace nosig
