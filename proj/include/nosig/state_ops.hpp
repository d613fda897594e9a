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

#ifndef NOSIG_STATE_OPS_HPP
#define NOSIG_STATE_OPS_HPP

#include <optional>

#include "nosig/types.hpp"

namespace nosig {

enum class Subsystem { A, B };

PureState tensor(const PureState &a, const PureState &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced density matrix on the kept factor. A is the slow index:
/// joint index = a*dimB + b.
DensityMatrix partial_trace(const DensityMatrix &rho, Subsystem keep,
                            int dim_a, int dim_b);

/// Mixture density Sum_i p_i |psi_i><psi_i|.
DensityMatrix ensemble_density(const Ensemble &e);

/// SVD of the dimA x dimB coefficient matrix. Coefficients are squared
/// singular values above cutoff, descending; left/right vectors are the
/// matching Schmidt vectors, so
///   psi = Sum_k sqrt(coefficients[k]) left.col(k) (x) right.col(k).
SchmidtDecomposition schmidt(const BipartiteState &psi,
                             double cutoff = tol::kSpectrumCutoff);

/// Canonical purification Sum_k sqrt(lambda_k) |v_k>|e_k> with dimB equal
/// to the rank of rho.
BipartiteState purify(const DensityMatrix &rho);

/// Tr[rho_AB (P_A (x) P_B)], clamped to [0,1] when within 1e-10 of the
/// boundary; values farther outside raise NumericalIntegrityError.
double joint_probability(const DensityMatrix &rho_ab, const Matrix &p_a,
                         const Matrix &p_b);

struct Conditional {
  double probability;
  std::optional<DensityMatrix> state; // absent iff probability <= 1e-12
};

/// Trace rule: probability Tr[rho_AB (1 (x) P_B)] and the normalized
/// conditional A-state Tr_B[rho_AB (1 (x) P_B)] / probability.
Conditional conditional_state(const DensityMatrix &rho_ab, const Matrix &p_b,
                              int dim_a, int dim_b);

/// (1/2) Sum |eigenvalues(rho - sigma)|, in [0,1].
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

} // namespace nosig

#endif
