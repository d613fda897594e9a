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

// Numerical tolerances used across the library. Target scale is dense
// matrices of joint dimension <= 64, so absolute tolerances are adequate.

namespace nosig::tol {

// Pure-state and bipartite-state Euclidean norm deviation from 1.
inline constexpr double kNorm = 1e-12;

// Max-abs deviation of a matrix from its conjugate transpose.
inline constexpr double kHermitian = 1e-10;

// Deviation of a density-matrix trace from 1.
inline constexpr double kTrace = 1e-9;

// Density matrices: min eigenvalue >= -kPsdPerDim * dim.
inline constexpr double kPsdPerDim = 1e-9;

// Ensemble probabilities: deviation of the sum from 1.
inline constexpr double kProbSum = 1e-9;

// Projector checks: idempotence, orthogonality, completeness.
inline constexpr double kProjector = 1e-10;

// Eigenvalue / Schmidt-coefficient cutoff separating rank from noise.
inline constexpr double kSpectrumCutoff = 1e-12;

// Below this, a measurement outcome is treated as impossible.
inline constexpr double kOutcomeEps = 1e-12;

// Two ensembles must mix to densities this close to be comparable.
inline constexpr double kDensityMatch = 1e-8;

// Steering verification passes when no deviation exceeds this.
inline constexpr double kSteeringPass = 1e-8;

// Choi eigenvalues kept as Kraus operators (numerical rank cutoff).
inline constexpr double kKrausCutoff = 1e-10;

// Complete positivity: min Choi eigenvalue >= -kCpPerDim * dim.
inline constexpr double kCpPerDim = 1e-9;

// Trace preservation: max-abs deviation of Tr_out(Choi) from identity.
inline constexpr double kTracePreserving = 1e-9;

// Sampled positivity verdict: worst min-eigenvalue >= -kPositivitySample.
inline constexpr double kPositivitySample = 1e-9;

// Linearity residual above this counts as a signaling witness. One decade
// of guard band over the numerical floor keeps integrator drift from
// producing false positives.
inline constexpr double kSignalThreshold = 1e-7;

} // namespace nosig::tol
