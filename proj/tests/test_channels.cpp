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

#include "nosig/channels.hpp"
#include "nosig/errors.hpp"
#include "nosig/qubit.hpp"
#include "nosig/random.hpp"
#include "nosig/state_ops.hpp"

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

// Random CPTP channel: Ginibre Kraus operators whitened so they close,
// K_i = G_i S^{-1/2} with S = Sum G_i'G_i.
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

// SWAP on C^d (x) C^d, the transpose map's Choi matrix.
Matrix swap_matrix(int d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      s(i * d + j, j * d + i) = 1.0;
  return s;
}

} // namespace

TEST_CASE("choi and kraus containers validate their invariants") {
  CHECK_THROWS_AS(ChoiMatrix(2, 2, Matrix::Identity(3, 3)), DimensionError);
  Matrix skew = Matrix::Zero(4, 4);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(ChoiMatrix(2, 2, skew), InvalidState);
  CHECK_NOTHROW(ChoiMatrix(2, 2, swap_matrix(2)));

  CHECK_THROWS_AS(KrausChannel(2, 2, {}), InvalidState);
  CHECK_THROWS_AS(KrausChannel(2, 2, {Matrix::Identity(3, 2)}),
                  DimensionError);

  const KrausChannel id(2, 2, {Matrix::Identity(2, 2)});
  CHECK(id.closure_deviation() < 1e-15);
  const KrausChannel leaky(2, 2, {0.5 * Matrix::Identity(2, 2)});
  CHECK(leaky.closure_deviation() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("builtin choi matrices match their closed forms") {
  SUBCASE("identity is the unnormalized maximally entangled projector") {
    const ChoiMatrix j = LinearMapSpec::identity(2).to_choi();
    // One eigenvalue d, the rest zero.
    const RealVector eigs = hermitian_eigenvalues(j.matrix());
    CHECK(eigs(3) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(eigs(0)) < 1e-12);
    CHECK(std::abs(eigs(2)) < 1e-12);
    CHECK(j.matrix().trace().real() == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("transpose is SWAP, one negative direction") {
    const ChoiMatrix j = LinearMapSpec::transpose(2).to_choi();
    CHECK(max_abs(j.matrix() - swap_matrix(2)) < 1e-14);
    const RealVector eigs = hermitian_eigenvalues(j.matrix());
    CHECK(eigs(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eigs(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigs(3) == doctest::Approx(1.0).epsilon(1e-12));

    // Same shape in dimension 3: min eigenvalue still -1.
    const ChoiMatrix j3 = LinearMapSpec::transpose(3).to_choi();
    CHECK(max_abs(j3.matrix() - swap_matrix(3)) < 1e-14);
    CHECK(min_eigenvalue(j3.matrix()) == doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("fully depolarizing is I/2, reached by the Pauli channel too") {
    const ChoiMatrix j = LinearMapSpec::depolarizing(2, 1.0).to_choi();
    CHECK(max_abs(j.matrix() - 0.5 * Matrix::Identity(4, 4)) < 1e-14);

    const KrausChannel pauli(
        2, 2,
        {0.5 * Matrix::Identity(2, 2), 0.5 * qubit::pauli_x(),
         0.5 * qubit::pauli_y(), 0.5 * qubit::pauli_z()});
    CHECK(pauli.closure_deviation() < 1e-14);
    CHECK(max_abs(choi_from_kraus(pauli).matrix() -
                  0.5 * Matrix::Identity(4, 4)) < 1e-14);
  }

  SUBCASE("zero depolarizing weight is the identity") {
    const ChoiMatrix j0 = LinearMapSpec::depolarizing(2, 0.0).to_choi();
    const ChoiMatrix jid = LinearMapSpec::identity(2).to_choi();
    CHECK(max_abs(j0.matrix() - jid.matrix()) < 1e-14);
  }

  SUBCASE("unitary choi has rank one and trace d") {
    const ChoiMatrix j =
        LinearMapSpec::unitary(random_unitary(3, 21)).to_choi();
    const RealVector eigs = hermitian_eigenvalues(j.matrix());
    CHECK(eigs(eigs.size() - 1) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(eigs(eigs.size() - 2)) < 1e-10);
  }

  CHECK_THROWS_AS(LinearMapSpec::depolarizing(2, 1.5), InvalidState);
  CHECK_THROWS_AS(LinearMapSpec::depolarizing(2, -0.1), InvalidState);
  CHECK_THROWS_AS(LinearMapSpec::identity(0), DimensionError);
  Matrix not_u(2, 2);
  not_u << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(LinearMapSpec::unitary(not_u), InvalidState);
}

TEST_CASE("kraus extraction rebuilds the channel action") {
  SUBCASE("identity extracts to a single closing operator") {
    const KrausChannel k =
        kraus_from_choi(LinearMapSpec::identity(2).to_choi());
    REQUIRE(k.operators().size() == 1);
    CHECK(k.closure_deviation() < 1e-12);
    CHECK(max_abs(k.operators()[0].adjoint() * k.operators()[0] -
                  Matrix::Identity(2, 2)) < 1e-12);
  }

  SUBCASE("depolarizing(0.5) extracts four operators") {
    const KrausChannel k =
        kraus_from_choi(LinearMapSpec::depolarizing(2, 0.5).to_choi());
    CHECK(k.operators().size() == 4);
    CHECK(k.closure_deviation() < 1e-12);
  }

  SUBCASE("transpose has no kraus form") {
    try {
      kraus_from_choi(LinearMapSpec::transpose(2).to_choi());
      FAIL("expected NotCompletelyPositive");
    } catch (const NotCompletelyPositive &e) {
      CHECK(e.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-9));
    }
  }

  SUBCASE("roundtrip preserves the action of random channels") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      const int din = 2 + static_cast<int>(seed % 2);
      const int dout = 2 + static_cast<int>((seed / 2) % 2);
      const KrausChannel original =
          random_cptp(din, dout, 3, sub_seed(seed, 0));
      const KrausChannel rebuilt =
          kraus_from_choi(choi_from_kraus(original));
      CHECK(rebuilt.closure_deviation() < 1e-9);
      for (uint64_t probe = 0; probe < 3; ++probe) {
        const DensityMatrix rho =
            random_density(din, din, sub_seed(seed, 100 + probe));
        const MapOutput a = apply(LinearMapSpec::kraus(original), rho);
        const MapOutput b = apply(LinearMapSpec::kraus(rebuilt), rho);
        CHECK(max_abs(a.matrix - b.matrix) < 1e-10);
      }
    }
  }
}

TEST_CASE("apply evaluates every representation consistently") {
  const DensityMatrix plus_i(
      (Matrix(2, 2) << 0.5, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.5)
          .finished());

  SUBCASE("transpose flips the phase of |+i>") {
    const MapOutput out = apply(LinearMapSpec::transpose(2), plus_i);
    Matrix minus_i(2, 2);
    minus_i << 0.5, Complex(0.0, 0.5), Complex(0.0, -0.5), 0.5;
    CHECK(out.is_state);
    CHECK(max_abs(out.matrix - minus_i) < 1e-14);
    CHECK(out.min_eigenvalue > -1e-12);
  }

  SUBCASE("identity and unitary act as expected") {
    const DensityMatrix rho = random_density(3, 2, 31);
    CHECK(max_abs(apply(LinearMapSpec::identity(3), rho).matrix -
                  rho.matrix()) < 1e-15);
    const Matrix u = random_unitary(3, 32);
    const MapOutput rotated = apply(LinearMapSpec::unitary(u), rho);
    CHECK(rotated.is_state);
    CHECK(max_abs(rotated.matrix - u * rho.matrix() * u.adjoint()) < 1e-13);
  }

  SUBCASE("depolarizing shrinks toward the maximally mixed state") {
    const DensityMatrix rho = random_density(2, 2, 33);
    const double l = 0.3;
    const MapOutput out = apply(LinearMapSpec::depolarizing(2, l), rho);
    CHECK(max_abs(out.matrix - ((1.0 - l) * rho.matrix() +
                                (l / 2.0) * Matrix::Identity(2, 2))) < 1e-14);
  }

  SUBCASE("kraus, its choi, and the stored choi agree") {
    for (uint64_t seed = 40; seed < 45; ++seed) {
      const KrausChannel channel = random_cptp(3, 2, 2, seed);
      const LinearMapSpec as_kraus = LinearMapSpec::kraus(channel);
      const LinearMapSpec as_choi =
          LinearMapSpec::choi(choi_from_kraus(channel));
      const DensityMatrix rho = random_density(3, 3, sub_seed(seed, 5));
      const MapOutput a = apply(as_kraus, rho);
      const MapOutput b = apply(as_choi, rho);
      CHECK(max_abs(a.matrix - b.matrix) < 1e-12);
      CHECK(a.is_state);
      CHECK(b.is_state);
    }
  }

  SUBCASE("maps are linear over mixtures") {
    const LinearMapSpec maps[] = {
        LinearMapSpec::transpose(2), LinearMapSpec::depolarizing(2, 0.7),
        LinearMapSpec::kraus(random_cptp(2, 2, 3, 46))};
    for (const LinearMapSpec &map : maps) {
      const DensityMatrix r1 = random_density(2, 2, 47);
      const DensityMatrix r2 = random_density(2, 1, 48);
      const double p = 0.35;
      const DensityMatrix mix(p * r1.matrix() + (1.0 - p) * r2.matrix());
      const Matrix expected = p * apply(map, r1).matrix +
                              (1.0 - p) * apply(map, r2).matrix;
      CHECK(max_abs(apply(map, mix).matrix - expected) < 1e-10);
    }
  }

  SUBCASE("non-state outputs are flagged, not thrown") {
    // rho - I/4 as a choi-specified map: trace drops to 1/2 and every
    // pure input picks up eigenvalue -1/4 exactly.
    const Matrix j = LinearMapSpec::identity(2).to_choi().matrix() -
                     0.25 * Matrix::Identity(4, 4);
    const LinearMapSpec shifted = LinearMapSpec::choi(ChoiMatrix(2, 2, j));
    const MapOutput out =
        apply(shifted, DensityMatrix::pure(qubit::ket_plus()));
    CHECK_FALSE(out.is_state);
    CHECK(out.min_eigenvalue == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK_THROWS_AS(out.state(), InvalidState);
  }

  CHECK_THROWS_AS(
      apply(LinearMapSpec::identity(3), DensityMatrix::maximally_mixed(2)),
      DimensionError);
}

TEST_CASE("cp and tp certification") {
  SUBCASE("identity and depolarizing are channels") {
    for (const double l : {0.0, 0.3, 1.0}) {
      const ChoiMatrix j = LinearMapSpec::depolarizing(2, l).to_choi();
      CHECK(is_completely_positive(j).completely_positive);
      CHECK(is_trace_preserving(j).trace_preserving);
    }
    const ChoiMatrix jid = LinearMapSpec::identity(4).to_choi();
    CHECK(is_completely_positive(jid).completely_positive);
    CHECK(is_trace_preserving(jid).trace_preserving);
  }

  SUBCASE("transpose is tp but not cp") {
    const ChoiMatrix j = LinearMapSpec::transpose(2).to_choi();
    const CpResult cp = is_completely_positive(j);
    CHECK_FALSE(cp.completely_positive);
    CHECK(cp.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(is_trace_preserving(j).trace_preserving);
  }

  SUBCASE("a scaled choi matrix loses trace preservation measurably") {
    const ChoiMatrix half(
        2, 2, 0.5 * LinearMapSpec::identity(2).to_choi().matrix());
    const TpResult tp = is_trace_preserving(half);
    CHECK_FALSE(tp.trace_preserving);
    CHECK(tp.max_deviation == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("random cptp constructions certify as cp and tp") {
    for (uint64_t seed = 50; seed < 60; ++seed) {
      const ChoiMatrix j = choi_from_kraus(random_cptp(3, 3, 4, seed));
      CHECK(is_completely_positive(j).completely_positive);
      const TpResult tp = is_trace_preserving(j);
      CHECK(tp.trace_preserving);
      CHECK(tp.max_deviation < 1e-9);
    }
  }
}

TEST_CASE("sampled positivity separates positive from nonpositive maps") {
  SUBCASE("transpose is positive on its own system") {
    const SampledPositivity result =
        is_positive_sampled(LinearMapSpec::transpose(2), 500, 11);
    CHECK(result.positive);
    CHECK(result.worst > -1e-12);
    CHECK(result.samples == 500);
  }

  SUBCASE("the shifted map is caught at once") {
    const Matrix j = LinearMapSpec::identity(2).to_choi().matrix() -
                     0.25 * Matrix::Identity(4, 4);
    const LinearMapSpec shifted = LinearMapSpec::choi(ChoiMatrix(2, 2, j));
    const SampledPositivity result = is_positive_sampled(shifted, 200, 12);
    CHECK_FALSE(result.positive);
    CHECK(result.worst == doctest::Approx(-0.25).epsilon(1e-9));
  }

  SUBCASE("the worst sample is seed-deterministic") {
    const SampledPositivity a =
        is_positive_sampled(LinearMapSpec::depolarizing(2, 0.4), 300, 13);
    const SampledPositivity b =
        is_positive_sampled(LinearMapSpec::depolarizing(2, 0.4), 300, 13);
    CHECK(a.worst == b.worst);
    CHECK(a.positive);
  }

  CHECK_THROWS_AS(is_positive_sampled(LinearMapSpec::identity(2), 0, 1),
                  InvalidState);
}

TEST_CASE("extension by an identity bystander") {
  const DensityMatrix bell = qubit::bell_phi_plus().joint_density();

  SUBCASE("partial transpose of the Bell state") {
    const ExtendedOutput out =
        extend_and_apply(LinearMapSpec::transpose(2), bell, 2, 2);
    Matrix expected(4, 4);
    expected << 0.5, 0.0, 0.0, 0.0,
                0.0, 0.0, 0.5, 0.0,
                0.0, 0.5, 0.0, 0.0,
                0.0, 0.0, 0.0, 0.5;
    CHECK(max_abs(out.matrix - expected) < 1e-14);
    CHECK(out.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  }

  SUBCASE("identity extension leaves the state alone") {
    const DensityMatrix rho = random_density(6, 4, 61);
    const ExtendedOutput out =
        extend_and_apply(LinearMapSpec::identity(2), rho, 2, 3);
    CHECK(max_abs(out.matrix - rho.matrix()) < 1e-13);
    CHECK(out.min_eigenvalue > -1e-10);
  }

  SUBCASE("fully depolarizing one side of the Bell state gives I/4") {
    const ExtendedOutput out =
        extend_and_apply(LinearMapSpec::depolarizing(2, 1.0), bell, 2, 2);
    CHECK(max_abs(out.matrix - 0.25 * Matrix::Identity(4, 4)) < 1e-13);
    CHECK(out.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-10));
  }

  SUBCASE("unitary extension acts on the A factor of a product") {
    const Matrix u = random_unitary(2, 62);
    const DensityMatrix a = random_density(2, 2, 63);
    const DensityMatrix b = random_density(3, 3, 64);
    const ExtendedOutput out =
        extend_and_apply(LinearMapSpec::unitary(u), tensor(a, b), 2, 3);
    CHECK(max_abs(out.matrix -
                  kron(u * a.matrix() * u.adjoint(), b.matrix())) < 1e-12);
  }

  SUBCASE("kraus extension matches memberwise kraus action") {
    const KrausChannel channel = random_cptp(2, 2, 3, 65);
    const LinearMapSpec map = LinearMapSpec::kraus(channel);
    const DensityMatrix rho = random_density(4, 4, 66);
    const ExtendedOutput via_choi = extend_and_apply(map, rho, 2, 2);
    Matrix direct = Matrix::Zero(4, 4);
    for (const Matrix &k : channel.operators())
      direct += kron(k, Matrix::Identity(2, 2)) * rho.matrix() *
                kron(k, Matrix::Identity(2, 2)).adjoint();
    CHECK(max_abs(via_choi.matrix - direct) < 1e-12);
  }

  CHECK_THROWS_AS(extend_and_apply(LinearMapSpec::identity(3), bell, 2, 2),
                  DimensionError);
  CHECK_THROWS_AS(extend_and_apply(LinearMapSpec::identity(2), bell, 2, 3),
                  DimensionError);
}

TEST_CASE("representation accessors guard their kind") {
  const LinearMapSpec id = LinearMapSpec::identity(2);
  CHECK_THROWS_AS(id.kraus_channel(), InvalidState);
  CHECK_THROWS_AS(id.choi_matrix(), InvalidState);
  CHECK_THROWS_AS(id.unitary_matrix(), InvalidState);

  const LinearMapSpec k = LinearMapSpec::kraus(random_cptp(2, 2, 2, 70));
  CHECK_NOTHROW(k.kraus_channel());
  CHECK(k.dim_in() == 2);
  CHECK(k.dim_out() == 2);
}
