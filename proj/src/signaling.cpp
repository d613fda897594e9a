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

#include "nosig/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"
#include "nosig/state_ops.hpp"

namespace nosig {

EvolvedEnsemble evolve_ensemble(const DynamicsMap &g, const Ensemble &e) {
  if (e.dim() != g.dim_in())
    throw DimensionError("evolve_ensemble: ensemble dim != map input dim");
  std::vector<double> probabilities;
  std::vector<DensityMatrix> outputs;
  Matrix avg = Matrix::Zero(g.dim_out(), g.dim_out());
  for (const auto &member : e.members()) {
    DensityMatrix out = g.evaluate(member.state);
    avg += member.probability * out.matrix();
    probabilities.push_back(member.probability);
    outputs.push_back(std::move(out));
  }
  return {std::move(probabilities), std::move(outputs),
          DensityMatrix(hermitize(avg))};
}

double linearity_residual(const DynamicsMap &g, const Ensemble &e1,
                          const Ensemble &e2) {
  const double mismatch =
      trace_distance(ensemble_density(e1), ensemble_density(e2));
  if (mismatch > tol::kDensityMatch)
    throw MismatchedDensity(
        "linearity_residual: ensembles do not share a density matrix "
        "(trace distance " +
            std::to_string(mismatch) + ")",
        mismatch);
  return trace_distance(evolve_ensemble(g, e1).average,
                        evolve_ensemble(g, e2).average);
}

HelstromResult helstrom(const DensityMatrix &rho1, const DensityMatrix &rho2) {
  if (rho1.dim() != rho2.dim())
    throw DimensionError("helstrom: dimension mismatch");
  const int d = rho1.dim();
  const HermitianEigen eig =
      hermitian_eigen_sorted(rho1.matrix() - rho2.matrix());
  Matrix plus = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) >= 0.0)
      plus += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  plus = hermitize(plus);
  HelstromResult r;
  r.projector_first = plus;
  r.projector_second = Matrix::Identity(d, d) - plus;
  r.trace_distance = trace_distance(rho1, rho2);
  r.success_probability = 0.5 + 0.5 * r.trace_distance;
  return r;
}

Ensemble eigenbasis_decomposition(const DensityMatrix &rho) {
  const HermitianEigen eig = hermitian_eigen_sorted(rho.matrix());
  std::vector<Ensemble::Member> members;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= tol::kSpectrumCutoff)
      continue;
    Vector v = eig.vectors.col(k);
    members.push_back({eig.values(k), PureState(v / v.norm())});
  }
  return Ensemble(std::move(members));
}

SignalingReport signaling_test(const DynamicsMap &g, const DensityMatrix &rho,
                               int n_pairs, int m, uint64_t seed,
                               ExecPolicy policy) {
  if (rho.dim() != g.dim_in())
    throw DimensionError("signaling_test: rho dim != map input dim");
  if (n_pairs < 1)
    throw InvalidState("signaling_test: need at least one pair");
  if (rho.rank() <= 1)
    throw DegenerateInput(
        "signaling_test: pure states admit a unique decomposition, "
        "nothing to compare");

  // Candidate chain: eigenbasis first, then seeded random decompositions.
  // Consecutive candidates form the pairs.
  std::vector<Ensemble> candidates;
  candidates.push_back(eigenbasis_decomposition(rho));
  for (int i = 0; i < n_pairs; ++i)
    candidates.push_back(
        random_decomposition(rho, m, sub_seed(seed, static_cast<uint64_t>(i))));

  std::vector<std::optional<EvolvedEnsemble>> evolved(candidates.size());
  exec::for_each(policy, static_cast<long long>(candidates.size()),
                 [&](long long i) {
                   evolved[static_cast<std::size_t>(i)] =
                       evolve_ensemble(g, candidates[static_cast<std::size_t>(i)]);
                 });

  int best = 0;
  double best_residual = -1.0;
  for (int i = 0; i < n_pairs; ++i) {
    const double r = trace_distance(evolved[i]->average,
                                    evolved[i + 1]->average);
    if (r > best_residual) {
      best = i;
      best_residual = r;
    }
  }

  const HelstromResult disc =
      helstrom(evolved[best]->average, evolved[best + 1]->average);
  return SignalingReport{
      rho,
      candidates[best],
      candidates[best + 1],
      evolved[best]->average,
      evolved[best + 1]->average,
      best_residual,
      disc.success_probability,
      disc,
      best_residual > tol::kSignalThreshold ? Verdict::SignalingDetected
                                            : Verdict::NoSignalingConsistent,
      std::nullopt};
}

double binomial_two_sided_p(long long n, long long k) {
  if (n < 1)
    throw InvalidState("binomial_two_sided_p: need at least one trial");
  if (k < 0 || k > n)
    throw InvalidState("binomial_two_sided_p: k outside [0, n]");
  const double log_half_n = -static_cast<double>(n) * std::log(2.0);
  auto log_pmf = [&](long long j) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(static_cast<double>(n - j) + 1.0) + log_half_n;
  };
  const long long hi = std::max(k, n - k);
  double p = 0.0;
  for (long long j = hi; j <= n; ++j)
    p += std::exp(log_pmf(j));
  for (long long j = 0; j <= n - hi; ++j)
    p += std::exp(log_pmf(j));
  return std::clamp(p, 0.0, 1.0);
}

EmpiricalRecord simulate_experiment(const DynamicsMap &g,
                                    const BipartiteState &shared,
                                    const SteeringProtocol &proto_a,
                                    const SteeringProtocol &proto_b,
                                    long long shots, uint64_t seed,
                                    ExecPolicy policy) {
  if (shots < 0)
    throw InvalidState("simulate_experiment: negative shot count");
  for (const SteeringProtocol *proto : {&proto_a, &proto_b}) {
    const SteeringReport check = verify_steering(*proto, shared);
    if (!check.pass())
      throw ProtocolError(
          "simulate_experiment: protocol fails verification (max deviation " +
          std::to_string(check.max_deviation()) + ")");
  }
  const double mismatch =
      trace_distance(ensemble_density(proto_a.predicted()),
                     ensemble_density(proto_b.predicted()));
  if (mismatch > tol::kDensityMatch)
    throw ProtocolError(
        "simulate_experiment: protocols prepare different density matrices "
        "(trace distance " +
        std::to_string(mismatch) + ")");

  const EvolvedEnsemble ev_a = evolve_ensemble(g, proto_a.predicted());
  const EvolvedEnsemble ev_b = evolve_ensemble(g, proto_b.predicted());
  const HelstromResult disc = helstrom(ev_a.average, ev_b.average);

  // Per-arm outcome distributions and, per outcome, the probability that
  // Alice's discriminator fires on its "first arm" projector.
  std::vector<std::vector<double>> outcome_prob(2), guess_first(2);
  for (int arm = 0; arm < 2; ++arm) {
    const EvolvedEnsemble &ev = (arm == 0) ? ev_a : ev_b;
    for (std::size_t i = 0; i < ev.outputs.size(); ++i) {
      outcome_prob[arm].push_back(ev.probabilities[i]);
      const double t =
          (disc.projector_first * ev.outputs[i].matrix()).trace().real();
      guess_first[arm].push_back(std::clamp(t, 0.0, 1.0));
    }
  }

  EmpiricalRecord record;
  record.seed = seed;
  record.shots = shots;
  record.expected_rate = disc.success_probability;
  if (shots == 0)
    return record;

  record.successes = exec::count(policy, shots, [&](long long s) {
    Rng rng(sub_seed(seed, static_cast<uint64_t>(s)));
    const int arm = rng.uniform() < 0.5 ? 0 : 1;
    const double u = rng.uniform();
    std::size_t outcome = outcome_prob[arm].size() - 1;
    double cum = 0.0;
    for (std::size_t i = 0; i < outcome_prob[arm].size(); ++i) {
      cum += outcome_prob[arm][i];
      if (u < cum) {
        outcome = i;
        break;
      }
    }
    const int guess = rng.uniform() < guess_first[arm][outcome] ? 0 : 1;
    return guess == arm;
  });
  record.rate =
      static_cast<double>(record.successes) / static_cast<double>(shots);
  record.p_value = binomial_two_sided_p(shots, record.successes);
  return record;
}

} // namespace nosig
