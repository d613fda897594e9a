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

#include "nosig/steering.hpp"

#include <cmath>
#include <string>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"

namespace nosig {

SteeringProtocol::SteeringProtocol(int source_dim_b, int ancilla_dim,
                                   Matrix unitary_b,
                                   Matrix measurement_vectors,
                                   Ensemble predicted)
    : source_dim_b_(source_dim_b), ancilla_dim_(ancilla_dim),
      unitary_b_(std::move(unitary_b)),
      measurement_vectors_(std::move(measurement_vectors)),
      predicted_(std::move(predicted)) {
  if (source_dim_b_ < 1 || ancilla_dim_ < 0)
    throw DimensionError("SteeringProtocol: bad dimensions");
  const int m = extended_dim();
  if (unitary_b_.rows() != m || unitary_b_.cols() != m)
    throw DimensionError("SteeringProtocol: unitary must be m x m");
  const double dev =
      max_abs(unitary_b_.adjoint() * unitary_b_ - Matrix::Identity(m, m));
  if (dev > 1e-10)
    throw InvalidState("SteeringProtocol: unitarity deviation " +
                       std::to_string(dev));
  if (measurement_vectors_.rows() != m || measurement_vectors_.cols() != m)
    throw DimensionError("SteeringProtocol: measurement basis must be m x m");
  // Validates completeness, rank 1 and orthogonality as a side effect.
  ProjectiveMeasurement::from_basis(measurement_vectors_);
}

namespace {

// Two-pass Gram-Schmidt of the columns against already-accepted ones.
// Single-pass loses orthogonality near degeneracy.
Matrix reorthonormalize(const Matrix &columns) {
  Matrix out(columns.rows(), columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < j; ++k)
        v -= out.col(k).dot(v) * out.col(k);
    const double n = v.norm();
    if (n < 1e-8)
      throw NumericalIntegrityError(
          "steering: target encoding vectors are numerically dependent");
    out.col(j) = v / n;
  }
  return out;
}

} // namespace

SteeringProtocol build_steering(const Ensemble &target,
                                const BipartiteState &shared) {
  if (target.dim() != shared.dim_a())
    throw DimensionError("build_steering: target dim != shared dimA");
  const DensityMatrix rho_a =
      partial_trace(shared.joint_density(), Subsystem::A, shared.dim_a(),
                    shared.dim_b());
  const double mismatch = trace_distance(ensemble_density(target), rho_a);
  if (mismatch > tol::kDensityMatch)
    throw MismatchedDensity(
        "build_steering: target ensemble does not average to the reduced "
        "density matrix of the shared state (trace distance " +
            std::to_string(mismatch) + ")",
        mismatch);

  const SchmidtDecomposition sd = schmidt(shared);
  const int r = sd.rank;
  const int m = target.size();
  if (m < r)
    throw InfeasibleEnsemble(
        "build_steering: fewer target members than the Schmidt rank");

  // h_k[i] = sqrt(x_i / lambda_k) <v_k|psi_i>. Matching densities make
  // these orthonormal; a light cleanup absorbs tolerance-level mismatch.
  Matrix h(m, r);
  for (int k = 0; k < r; ++k) {
    const double inv = 1.0 / std::sqrt(sd.coefficients(k));
    for (int i = 0; i < m; ++i) {
      const auto &member = target.member(i);
      h(i, k) = inv * std::sqrt(member.probability) *
                sd.left_vectors.col(k).dot(member.state.amplitudes());
    }
  }
  h = reorthonormalize(h);

  // Columns 0..r-1 act on the embedded Schmidt partners; the remaining
  // columns map the ancilla coordinates onto the residual basis, in order.
  Matrix u(m, m);
  u.leftCols(r) = h;
  if (m > r)
    u.rightCols(m - r) = orthonormal_completion(h, m);

  return SteeringProtocol(r, m - r, std::move(u), Matrix::Identity(m, m),
                          target);
}

SteeringReport verify_steering(const SteeringProtocol &protocol,
                               const BipartiteState &shared) {
  const int dim_a = shared.dim_a();
  const int m = protocol.extended_dim();
  if (protocol.predicted().dim() != dim_a)
    throw DimensionError("verify_steering: predicted dim != shared dimA");
  const SchmidtDecomposition sd = schmidt(shared);
  if (sd.rank > m)
    throw DimensionError(
        "verify_steering: shared Schmidt rank exceeds the extended space");

  // Embedded shared state: Sum_k sqrt(lambda_k) v_k (x) e_k in dimA x m.
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(dim_a) * m);
  for (int k = 0; k < sd.rank; ++k) {
    const double w = std::sqrt(sd.coefficients(k));
    for (int a = 0; a < dim_a; ++a)
      amp(a * m + k) += w * sd.left_vectors(a, k);
  }
  // Apply 1 (x) U_B.
  Vector rotated = Vector::Zero(amp.size());
  for (int a = 0; a < dim_a; ++a)
    rotated.segment(a * m, m) = protocol.unitary_b() * amp.segment(a * m, m);
  const DensityMatrix joint(rotated * rotated.adjoint());

  const Ensemble &predicted = protocol.predicted();
  SteeringReport report;
  report.probability_error.resize(m, 0.0);
  report.infidelity.resize(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const Matrix proj = protocol.measurement_vectors().col(i) *
                        protocol.measurement_vectors().col(i).adjoint();
    const Conditional c = conditional_state(joint, proj, dim_a, m);
    const double x = (i < predicted.size()) ? predicted.member(i).probability
                                            : 0.0;
    report.probability_error[i] = std::abs(c.probability - x);
    if (c.state.has_value()) {
      report.infidelity[i] =
          (i < predicted.size())
              ? 1.0 - fidelity(*c.state, predicted.member(i).state)
              : 1.0;
    } else {
      // Outcome never fires; only a failure if it was supposed to.
      report.infidelity[i] = (x > 1e-12) ? 1.0 : 0.0;
    }
    report.probability_sum += c.probability;
  }
  for (int i = 0; i < m; ++i) {
    report.max_probability_error =
        std::max(report.max_probability_error, report.probability_error[i]);
    report.max_infidelity = std::max(report.max_infidelity,
                                     report.infidelity[i]);
  }
  return report;
}

Ensemble random_decomposition(const DensityMatrix &rho, int m, uint64_t seed) {
  const int r = rho.rank();
  if (m < r)
    throw InfeasibleEnsemble(
        "random_decomposition: m below the rank of rho");

  const HermitianEigen eig = hermitian_eigen_sorted(rho.matrix());
  const Matrix basis = random_unitary(m, seed);

  // Unnormalized post-measurement A states for outcome i when the
  // canonical purification, ancilla-extended to m dimensions, is measured
  // in the Haar basis: w_i = Sum_k sqrt(lambda_k) conj(<e_k|alpha_i>) v_k.
  std::vector<Ensemble::Member> members;
  for (int i = 0; i < m; ++i) {
    Vector w = Vector::Zero(rho.dim());
    for (int k = 0; k < r; ++k)
      w += std::sqrt(std::max(eig.values(k), 0.0)) *
           std::conj(basis(k, i)) * eig.vectors.col(k);
    const double p = w.squaredNorm();
    if (p <= 1e-12)
      continue;
    const PureState psi(w / w.norm());
    // Merge parallel members so a pure rho collapses to one entry.
    bool merged = false;
    for (auto &existing : members) {
      if (overlap(existing.state, psi) >= 1.0 - 1e-12) {
        existing.probability += p;
        merged = true;
        break;
      }
    }
    if (!merged)
      members.push_back({p, psi});
  }
  return Ensemble(std::move(members));
}

} // namespace nosig
