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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "nosig/errors.hpp"
#include "nosig/qubit.hpp"
#include "nosig/random.hpp"
#include "nosig/signaling.hpp"
#include "oracles.hpp"

using namespace nosig;

namespace {

Matrix ginibre(int rows, int cols, uint64_t seed) {
  Rng rng(seed);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = rng.complex_gaussian();
  return g;
}

KrausChannel random_cptp(int din, int dout, int n_ops, uint64_t seed) {
  std::vector<Matrix> raw;
  Matrix s = Matrix::Zero(din, din);
  for (int i = 0; i < n_ops; ++i) {
    raw.push_back(ginibre(dout, din, sub_seed(seed, static_cast<uint64_t>(i))));
    s += raw.back().adjoint() * raw.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Matrix inv_sqrt = es.operatorInverseSqrt();
  for (Matrix &k : raw)
    k = k * inv_sqrt;
  return KrausChannel(din, dout, std::move(raw));
}

// Two random same-density ensembles: the eigenbasis of a random state and
// a seeded random decomposition of it.
std::pair<Ensemble, Ensemble> same_density_pair(int dim, uint64_t seed) {
  const DensityMatrix rho = random_density(dim, dim, seed);
  return {eigenbasis_decomposition(rho),
          random_decomposition(rho, dim + 1, sub_seed(seed, 1))};
}

// Frozen from a converged independent integration (fixed-step RK4 on the
// raw amplitudes, 4e5 steps, convergence gap below 1e-13) at the demo
// operating point h0 = sigma_x, coupling 1, time pi.
Vector golden_mean_field_ket0() {
  Vector v(2);
  v << Complex(-0.10789279854276759, 0.96813353711101779),
      Complex(-0.22461081786636755, 0.025031556901654671);
  return v;
}

// |+> is a sigma_x eigenstate with <sigma_z> = 0, so the coupling never
// engages and time pi contributes exactly the phase -1.
Vector golden_mean_field_ket_plus() {
  Vector v(2);
  v << Complex(-1.0 / std::sqrt(2.0), 0.0),
      Complex(-1.0 / std::sqrt(2.0), 0.0);
  return v;
}

// Trace distance of the evolved z vs x ensembles under the demo flow,
// frozen from the same independent integration.
constexpr double kGoldenMeanFieldResidual = 0.048467779445176912;

} // namespace

TEST_CASE("dynamics registration accepts rules that make states") {
  const DynamicsMap cloner = DynamicsMap::perfect_cloner(2);
  CHECK(cloner.dim_in() == 2);
  CHECK(cloner.dim_out() == 4);
  CHECK(cloner.kind() == DynamicsMap::Kind::BuiltinNonlinear);
  CHECK(cloner.label() == "perfect-cloner");
  CHECK(cloner.linear_spec() == nullptr);

  const DensityMatrix cloned = cloner.evaluate(qubit::ket0());
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  CHECK(max_abs(cloned.matrix() - expected) < 1e-15);

  const DynamicsMap lin = DynamicsMap::linear(LinearMapSpec::depolarizing(2, 0.5));
  CHECK(lin.kind() == DynamicsMap::Kind::Linear);
  REQUIRE(lin.linear_spec() != nullptr);
  CHECK(lin.linear_spec()->kind() == LinearMapSpec::Kind::Depolarizing);

  CHECK_THROWS_AS(DynamicsMap::perfect_cloner(1), InvalidDynamics);
  CHECK_THROWS_AS(cloner.evaluate(random_pure(3, 1)), DimensionError);
}

TEST_CASE("dynamics registration rejects rules that break states") {
  // rho - I/4 has trace 1/2: caught on the first probe input.
  auto shifted = [](const PureState &psi) {
    return DensityMatrix(psi.projector() - 0.25 * Matrix::Identity(2, 2));
  };
  CHECK_THROWS_AS(DynamicsMap::external(2, 2, shifted, "shifted"),
                  InvalidDynamics);

  // Wrong output dimension.
  auto padded = [](const PureState &) { return DensityMatrix::maximally_mixed(3); };
  CHECK_THROWS_AS(DynamicsMap::external(2, 2, padded, "padded"),
                  InvalidDynamics);

  CHECK_THROWS_AS(DynamicsMap::external(2, 2, nullptr), InvalidDynamics);
  CHECK_THROWS_AS(builtin_nonlinear("no-such-map"), InvalidDynamics);
  CHECK_THROWS_AS(builtin_nonlinear("perfect-cloner", mean_field_demo_params()),
                  InvalidDynamics);
  CHECK_NOTHROW(builtin_nonlinear("perfect-cloner"));
  CHECK_NOTHROW(builtin_nonlinear("mean-field-qubit"));
}

TEST_CASE("mean-field integrator") {
  const MeanFieldParams demo = mean_field_demo_params();

  SUBCASE("zero coupling reduces to exact unitary evolution") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      MeanFieldParams p = demo;
      p.coupling = 0.0;
      p.time = 0.7 + 0.3 * static_cast<double>(seed);
      const PureState psi = random_pure(2, seed);
      const PureState evolved = mean_field_trajectory(psi, p);
      const Vector exact =
          oracle::evolve_unitary(p.h0, p.time, psi.amplitudes());
      CHECK((evolved.amplitudes() - exact).norm() < 1e-8);
    }
  }

  SUBCASE("default step count is converged") {
    const PureState from0 = mean_field_trajectory(qubit::ket0(), demo);
    MeanFieldParams fine = demo;
    fine.steps = demo.steps * 100;
    const PureState from0_fine = mean_field_trajectory(qubit::ket0(), fine);
    CHECK((from0.amplitudes() - from0_fine.amplitudes()).norm() < 1e-6);

    // Frozen goldens from the independent integrator.
    CHECK((from0.amplitudes() - golden_mean_field_ket0()).norm() < 1e-6);
    const PureState fromp = mean_field_trajectory(qubit::ket_plus(), demo);
    CHECK((fromp.amplitudes() - golden_mean_field_ket_plus()).norm() < 1e-6);

    // Against the independent integrator at its own fine step count.
    const Vector independent = oracle::mean_field_fine(
        qubit::ket0().amplitudes(), demo.h0, demo.coupling, demo.time, 200000);
    CHECK((from0.amplitudes() - independent).norm() < 1e-8);
  }

  SUBCASE("norm is restored after every step") {
    MeanFieldParams rough = demo;
    rough.steps = 7;
    const PureState out = mean_field_trajectory(random_pure(2, 3), rough);
    CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-14);
  }

  SUBCASE("bad parameters are rejected") {
    MeanFieldParams p = demo;
    p.steps = 0;
    CHECK_THROWS_AS(mean_field_trajectory(qubit::ket0(), p), InvalidDynamics);
    p = demo;
    p.h0 = Matrix::Zero(3, 3);
    CHECK_THROWS_AS(mean_field_trajectory(qubit::ket0(), p), InvalidDynamics);
    p = demo;
    p.h0(0, 1) = Complex(0.0, 0.5); // no matching conjugate below
    CHECK_THROWS_AS(mean_field_trajectory(qubit::ket0(), p), InvalidDynamics);
  }
}

TEST_CASE("ensemble evolution and its averages") {
  const DynamicsMap cloner = DynamicsMap::perfect_cloner(2);

  SUBCASE("cloner on the z ensemble") {
    const EvolvedEnsemble ev = evolve_ensemble(cloner, qubit::z_ensemble());
    REQUIRE(ev.outputs.size() == 2);
    CHECK(ev.probabilities[0] == doctest::Approx(0.5));
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    CHECK(max_abs(ev.average.matrix() - expected) < 1e-14);
  }

  SUBCASE("cloner on the x ensemble") {
    const EvolvedEnsemble ev = evolve_ensemble(cloner, qubit::x_ensemble());
    Matrix expected(4, 4);
    expected << 1, 0, 0, 1,
                0, 1, 1, 0,
                0, 1, 1, 0,
                1, 0, 0, 1;
    expected *= 0.25;
    CHECK(max_abs(ev.average.matrix() - expected) < 1e-14);
  }

  SUBCASE("identity dynamics averages to the mixture") {
    const DynamicsMap id = DynamicsMap::linear(LinearMapSpec::identity(2));
    const EvolvedEnsemble ev = evolve_ensemble(id, qubit::trine_ensemble());
    CHECK(trace_distance(ev.average,
                         ensemble_density(qubit::trine_ensemble())) < 1e-12);
  }

  CHECK_THROWS_AS(evolve_ensemble(cloner, Ensemble({{1.0, random_pure(3, 1)}})),
                  DimensionError);
}

TEST_CASE("linearity residual vanishes for channels and not for the cloner") {
  SUBCASE("random channels, random same-density pairs") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
      const int dim = 2 + static_cast<int>(seed % 3);
      const DynamicsMap g = DynamicsMap::linear(LinearMapSpec::kraus(
          random_cptp(dim, dim, 3, sub_seed(seed, 77))));
      const auto [e1, e2] = same_density_pair(dim, seed);
      CHECK(linearity_residual(g, e1, e2) <= 1e-9);
    }
  }

  SUBCASE("cloner splits the z and x decompositions of I/2 by exactly 1/2") {
    // Golden value confirmed by brute-force eigendecomposition of the
    // 4x4 difference, done independently before this suite was written.
    const DynamicsMap cloner = DynamicsMap::perfect_cloner(2);
    const double residual =
        linearity_residual(cloner, qubit::z_ensemble(), qubit::x_ensemble());
    CHECK(std::abs(residual - 0.5) <= 1e-9);

    // Same number out of the in-test oracle, as a cross-check.
    const EvolvedEnsemble ez = evolve_ensemble(cloner, qubit::z_ensemble());
    const EvolvedEnsemble ex = evolve_ensemble(cloner, qubit::x_ensemble());
    CHECK(oracle::trace_distance_svd(ez.average.matrix(),
                                     ex.average.matrix()) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("mean-field flow separates the same pair") {
    const DynamicsMap mf = builtin_nonlinear("mean-field-qubit");
    const double residual =
        linearity_residual(mf, qubit::z_ensemble(), qubit::x_ensemble());
    CHECK(residual > 1e-3);
    CHECK(residual == doctest::Approx(kGoldenMeanFieldResidual).epsilon(1e-6));
  }

  SUBCASE("different densities are refused with the distance attached") {
    const Ensemble skewed({{0.9, qubit::ket0()}, {0.1, qubit::ket1()}});
    try {
      linearity_residual(DynamicsMap::perfect_cloner(2), skewed,
                         qubit::z_ensemble());
      FAIL("expected MismatchedDensity");
    } catch (const MismatchedDensity &e) {
      CHECK(e.trace_distance == doctest::Approx(0.4).epsilon(1e-9));
    }
  }
}

TEST_CASE("helstrom discrimination") {
  SUBCASE("the success rate is pinned to the trace distance") {
    const DensityMatrix z0 = DensityMatrix::pure(qubit::ket0());
    const DensityMatrix xp = DensityMatrix::pure(qubit::ket_plus());
    const HelstromResult r = helstrom(z0, xp);
    CHECK(r.trace_distance ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(r.success_probability -
                   (0.5 + 0.5 * r.trace_distance)) <= 1e-12);

    // The projectors actually deliver that rate.
    const double direct =
        0.5 * (r.projector_first * z0.matrix()).trace().real() +
        0.5 * (r.projector_second * xp.matrix()).trace().real();
    CHECK(direct == doctest::Approx(r.success_probability).epsilon(1e-12));

    CHECK(max_abs(r.projector_first + r.projector_second -
                  Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(r.projector_first * r.projector_first -
                  r.projector_first) < 1e-12);
  }

  SUBCASE("identical states cannot be told apart") {
    const DensityMatrix rho = random_density(3, 3, 5);
    const HelstromResult r = helstrom(rho, rho);
    CHECK(r.trace_distance < 1e-12);
    CHECK(r.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("no sampled measurement beats the bound") {
    for (uint64_t inst = 0; inst < 20; ++inst) {
      const DensityMatrix r1 = random_density(2, 2, sub_seed(inst, 0));
      const DensityMatrix r2 = random_density(2, 2, sub_seed(inst, 1));
      const HelstromResult best = helstrom(r1, r2);
      for (uint64_t probe = 0; probe < 50; ++probe) {
        const Matrix u = random_unitary(2, sub_seed(inst, 100 + probe));
        const Matrix p = u.col(0) * u.col(0).adjoint();
        const double rate =
            0.5 * (p * r1.matrix()).trace().real() +
            0.5 * ((Matrix::Identity(2, 2) - p) * r2.matrix()).trace().real();
        CHECK(rate <= best.success_probability + 1e-6);
      }
    }
  }

  CHECK_THROWS_AS(helstrom(DensityMatrix::maximally_mixed(2),
                           DensityMatrix::maximally_mixed(3)),
                  DimensionError);
}

TEST_CASE("eigenbasis decomposition") {
  Matrix diag(2, 2);
  diag << 0.7, 0.0, 0.0, 0.3;
  const Ensemble e = eigenbasis_decomposition(DensityMatrix(diag));
  REQUIRE(e.size() == 2);
  CHECK(e.member(0).probability == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(e.member(1).probability == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(overlap(e.member(0).state, qubit::ket0()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix rho = random_density(4, 3, 9);
  CHECK(trace_distance(ensemble_density(eigenbasis_decomposition(rho)), rho) <
        1e-10);

  const Ensemble pure =
      eigenbasis_decomposition(DensityMatrix::pure(qubit::ket_minus()));
  CHECK(pure.size() == 1);
}

TEST_CASE("signaling search") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);

  SUBCASE("the cloner is caught") {
    const SignalingReport report =
        signaling_test(DynamicsMap::perfect_cloner(2), mixed, 10, 3, 42);
    CHECK(report.verdict == Verdict::SignalingDetected);
    CHECK(report.residual > 1e-3);
    CHECK(report.residual ==
          doctest::Approx(trace_distance(report.output_a, report.output_b))
              .epsilon(1e-12));
    CHECK(report.helstrom_success ==
          doctest::Approx(0.5 + 0.5 * report.residual).epsilon(1e-12));
    CHECK(trace_distance(ensemble_density(report.ensemble_a), mixed) < 1e-10);
    CHECK(trace_distance(ensemble_density(report.ensemble_b), mixed) < 1e-10);
    CHECK_FALSE(report.empirical.has_value());
  }

  SUBCASE("channels pass quietly") {
    const SignalingReport id_report = signaling_test(
        DynamicsMap::linear(LinearMapSpec::identity(2)), mixed, 10, 3, 42);
    CHECK(id_report.verdict == Verdict::NoSignalingConsistent);
    CHECK(id_report.residual <= 1e-9);

    const SignalingReport dep_report = signaling_test(
        DynamicsMap::linear(LinearMapSpec::depolarizing(2, 0.35)),
        random_density(2, 2, 17), 10, 4, 43);
    CHECK(dep_report.verdict == Verdict::NoSignalingConsistent);
    CHECK(dep_report.residual <= 1e-9);
  }

  SUBCASE("the search is seed-deterministic") {
    const SignalingReport a =
        signaling_test(DynamicsMap::perfect_cloner(2), mixed, 8, 3, 7);
    const SignalingReport b =
        signaling_test(DynamicsMap::perfect_cloner(2), mixed, 8, 3, 7);
    CHECK(a.residual == b.residual);
    CHECK(max_abs(a.output_a.matrix() - b.output_a.matrix()) == 0.0);
  }

  SUBCASE("degenerate and malformed inputs") {
    CHECK_THROWS_AS(signaling_test(DynamicsMap::perfect_cloner(2),
                                   DensityMatrix::pure(qubit::ket0()), 5, 3, 1),
                    DegenerateInput);
    CHECK_THROWS_AS(signaling_test(DynamicsMap::perfect_cloner(2), mixed,
                                   0, 3, 1),
                    InvalidState);
    CHECK_THROWS_AS(signaling_test(DynamicsMap::perfect_cloner(2),
                                   DensityMatrix::maximally_mixed(3), 5, 3, 1),
                    DimensionError);
  }
}

TEST_CASE("binomial test agrees with explicit enumeration") {
  for (int n : {1, 2, 3, 5, 8, 12, 20, 30}) {
    for (int k = 0; k <= n; ++k) {
      CHECK(binomial_two_sided_p(n, k) ==
            doctest::Approx(oracle::binomial_p_enumerated(n, k))
                .epsilon(1e-10));
    }
  }
  CHECK(binomial_two_sided_p(10, 5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binomial_two_sided_p(100, 50) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(binomial_two_sided_p(100, 0) < 1e-25);
  CHECK_THROWS_AS(binomial_two_sided_p(0, 0), InvalidState);
  CHECK_THROWS_AS(binomial_two_sided_p(10, 11), InvalidState);
}

TEST_CASE("finite-shot experiments") {
  const BipartiteState bell = qubit::bell_phi_plus();
  const SteeringProtocol proto_z = build_steering(qubit::z_ensemble(), bell);
  const SteeringProtocol proto_x = build_steering(qubit::x_ensemble(), bell);

  SUBCASE("the cloner leaks Bob's choice at its Helstrom rate") {
    const DynamicsMap cloner = DynamicsMap::perfect_cloner(2);
    const long long shots = 100000;
    const EmpiricalRecord rec =
        simulate_experiment(cloner, bell, proto_z, proto_x, shots, 2024);
    CHECK(rec.expected_rate == doctest::Approx(0.75).epsilon(1e-9));
    REQUIRE(rec.rate.has_value());
    const double sigma =
        std::sqrt(0.75 * 0.25 / static_cast<double>(shots));
    CHECK(std::abs(*rec.rate - 0.75) < 3.0 * sigma);
    REQUIRE(rec.p_value.has_value());
    CHECK(*rec.p_value < 1e-20); // wildly inconsistent with a fair coin
  }

  SUBCASE("a channel leaks nothing") {
    const DynamicsMap dep =
        DynamicsMap::linear(LinearMapSpec::depolarizing(2, 0.25));
    const long long shots = 100000;
    const EmpiricalRecord rec =
        simulate_experiment(dep, bell, proto_z, proto_x, shots, 99);
    CHECK(rec.expected_rate == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(rec.rate.has_value());
    const double sigma = std::sqrt(0.25 / static_cast<double>(shots));
    CHECK(std::abs(*rec.rate - 0.5) < 5.0 * sigma);
  }

  SUBCASE("zero shots records the prediction only") {
    const EmpiricalRecord rec = simulate_experiment(
        DynamicsMap::perfect_cloner(2), bell, proto_z, proto_x, 0, 5);
    CHECK(rec.shots == 0);
    CHECK(rec.successes == 0);
    CHECK_FALSE(rec.rate.has_value());
    CHECK_FALSE(rec.p_value.has_value());
    CHECK(rec.expected_rate == doctest::Approx(0.75).epsilon(1e-9));
  }

  SUBCASE("tampered protocols are refused") {
    const double theta = 0.1;
    Matrix rot(2, 2);
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const SteeringProtocol tampered(
        proto_x.source_dim_b(), proto_x.ancilla_dim(),
        rot * proto_x.unitary_b(), proto_x.measurement_vectors(),
        proto_x.predicted());
    CHECK_THROWS_AS(simulate_experiment(DynamicsMap::perfect_cloner(2), bell,
                                        proto_z, tampered, 10, 5),
                    ProtocolError);
  }

  SUBCASE("protocols that verify but predict different mixtures are refused") {
    // Rotate one predicted member by ~9e-5: infidelity 8e-9 still passes
    // verification, but the predicted densities now differ by ~4.5e-5.
    const double eps = 9e-5;
    Vector tilted(2);
    tilted << std::cos(eps), std::sin(eps);
    const Ensemble nudged({{0.5, PureState(tilted)}, {0.5, qubit::ket1()}});
    const SteeringProtocol dishonest(
        proto_z.source_dim_b(), proto_z.ancilla_dim(), proto_z.unitary_b(),
        proto_z.measurement_vectors(), nudged);
    REQUIRE(verify_steering(dishonest, bell).pass());
    try {
      simulate_experiment(DynamicsMap::perfect_cloner(2), bell, proto_z,
                          dishonest, 10, 5);
      FAIL("expected ProtocolError");
    } catch (const ProtocolError &e) {
      CHECK(std::string(e.what()).find("density") != std::string::npos);
    }
  }

  CHECK_THROWS_AS(simulate_experiment(DynamicsMap::perfect_cloner(2), bell,
                                      proto_z, proto_x, -1, 5),
                  InvalidState);
}
