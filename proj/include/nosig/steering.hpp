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

#ifndef NOSIG_STEERING_HPP
#define NOSIG_STEERING_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nosig/state_ops.hpp"
#include "nosig/types.hpp"

namespace nosig {

/// Recipe for remotely preparing a prescribed pure-state decomposition of
/// the A-side reduced density matrix by acting only on B. The original B
/// support (Schmidt rank r) occupies coordinates 0..r-1 of the extended
/// m-dimensional B space; the unitary rotates the Schmidt partners onto
/// the target-encoding vectors; measuring in the stored basis then yields
/// outcome i with the predicted probability and conditional A-state.
class SteeringProtocol {
public:
  SteeringProtocol(int source_dim_b, int ancilla_dim, Matrix unitary_b,
                   Matrix measurement_vectors, Ensemble predicted);

  int source_dim_b() const { return source_dim_b_; }
  int ancilla_dim() const { return ancilla_dim_; }
  int extended_dim() const { return source_dim_b_ + ancilla_dim_; }
  const Matrix &unitary_b() const { return unitary_b_; }
  const Matrix &measurement_vectors() const { return measurement_vectors_; }
  const Ensemble &predicted() const { return predicted_; }
  ProjectiveMeasurement measurement() const {
    return ProjectiveMeasurement::from_basis(measurement_vectors_);
  }

private:
  int source_dim_b_;
  int ancilla_dim_;
  Matrix unitary_b_;
  Matrix measurement_vectors_;
  Ensemble predicted_;
};

struct SteeringReport {
  std::vector<double> probability_error; // |p_i - x_i| per outcome
  std::vector<double> infidelity;        // 1 - F(sigma_i, psi_i) per outcome
  double max_probability_error = 0.0;
  double max_infidelity = 0.0;
  double probability_sum = 0.0;

  double max_deviation() const {
    return std::max(max_probability_error, max_infidelity);
  }
  bool pass(double tolerance = tol::kSteeringPass) const {
    return max_deviation() <= tolerance;
  }
};

/// Build the protocol that steers the A side of `shared` into `target`.
/// Requires ensemble_density(target) == Tr_B(shared) within 1e-8, else
/// MismatchedDensity carrying the offending trace distance. Extended
/// dimension is the target member count m; m < Schmidt rank cannot occur
/// when the densities match but is guarded with InfeasibleEnsemble.
SteeringProtocol build_steering(const Ensemble &target,
                                const BipartiteState &shared);

/// Replay the protocol: embed `shared` (via its Schmidt form) into the
/// extended space, apply 1 (x) U_B, and compare each measured outcome
/// against the prediction via the trace rule.
SteeringReport verify_steering(const SteeringProtocol &protocol,
                               const BipartiteState &shared);

/// Ensemble induced by measuring the canonical purification of rho,
/// extended to m dimensions, in a Haar-random basis. Members with
/// probability <= 1e-12 are dropped; parallel members are merged, so a
/// pure rho yields a single member for every seed.
Ensemble random_decomposition(const DensityMatrix &rho, int m, uint64_t seed);

} // namespace nosig

#endif
