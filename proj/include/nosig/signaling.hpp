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

#ifndef NOSIG_SIGNALING_HPP
#define NOSIG_SIGNALING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nosig/dynamics.hpp"
#include "nosig/exec.hpp"
#include "nosig/steering.hpp"
#include "nosig/types.hpp"

namespace nosig {

struct EvolvedEnsemble {
  std::vector<double> probabilities;
  std::vector<DensityMatrix> outputs;
  DensityMatrix average; // Sum_i p_i g(P_psi_i)
};

/// Memberwise evolution under g and the probability-weighted average of
/// the outputs, the quantity a distant observer can actually see.
EvolvedEnsemble evolve_ensemble(const DynamicsMap &g, const Ensemble &e);

/// Trace distance between the evolved averages of two decompositions of
/// one density matrix. At most numerical noise for every linear g; a
/// larger value is a signaling witness. Requires the two ensembles to mix
/// to the same density matrix within 1e-8.
double linearity_residual(const DynamicsMap &g, const Ensemble &e1,
                          const Ensemble &e2);

/// Optimal two-hypothesis discrimination at equal priors: project onto
/// the nonnegative eigenspace of (rho1 - rho2).
struct HelstromResult {
  Matrix projector_first;  // outcome: guess rho1
  Matrix projector_second; // complement: guess rho2
  double trace_distance;
  double success_probability; // exactly 1/2 + trace_distance/2
};

HelstromResult helstrom(const DensityMatrix &rho1, const DensityMatrix &rho2);

enum class Verdict { NoSignalingConsistent, SignalingDetected };

struct EmpiricalRecord {
  uint64_t seed = 0;
  long long shots = 0;
  long long successes = 0;
  std::optional<double> rate;    // absent when shots == 0
  std::optional<double> p_value; // two-sided binomial against 1/2
  double expected_rate = 0.5;    // the Helstrom prediction
};

struct SignalingReport {
  DensityMatrix rho;
  Ensemble ensemble_a;
  Ensemble ensemble_b;
  DensityMatrix output_a;
  DensityMatrix output_b;
  double residual;
  double helstrom_success;
  HelstromResult discriminator;
  Verdict verdict;
  std::optional<EmpiricalRecord> empirical;
};

/// Eigendecomposition of rho as an ensemble: one member per eigenvalue
/// above cutoff.
Ensemble eigenbasis_decomposition(const DensityMatrix &rho);

/// Search for a signaling witness: chain the eigenbasis decomposition
/// with nPairs seeded random decompositions (size m), evolve each under
/// g, and report the consecutive pair with the largest residual. Pure rho
/// admits a unique decomposition, so it is rejected as degenerate.
SignalingReport signaling_test(const DynamicsMap &g, const DensityMatrix &rho,
                               int n_pairs, int m, uint64_t seed,
                               ExecPolicy policy = ExecPolicy::Serial);

/// Exact two-sided binomial test of k successes in n trials against
/// success probability 1/2.
double binomial_two_sided_p(long long n, long long k);

/// Finite-shot Alice/Bob run. Bob flips a fair coin per shot, steers with
/// the chosen protocol; the sampled conditional state evolves under g and
/// Alice applies the Helstrom discriminator between the two evolved
/// averages, guessing Bob's bit. Shot s draws all of its randomness from
/// sub_seed(seed, s), so the tally is independent of the worker count.
/// Both protocols must verify against `shared` and must predict ensembles
/// with equal density (no cheating through mismatched preparations).
EmpiricalRecord simulate_experiment(const DynamicsMap &g,
                                    const BipartiteState &shared,
                                    const SteeringProtocol &proto_a,
                                    const SteeringProtocol &proto_b,
                                    long long shots, uint64_t seed,
                                    ExecPolicy policy = ExecPolicy::Serial);

} // namespace nosig

#endif
