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

#include "nosig/dynamics.hpp"

#include <cmath>
#include <utility>

#include "nosig/errors.hpp"
#include "nosig/qubit.hpp"
#include "nosig/random.hpp"
#include "nosig/state_ops.hpp"

namespace nosig {

namespace {

constexpr uint64_t kRegistrationSeed = 0x6e6f736967ull; // arbitrary, fixed

Vector mean_field_rhs(const Vector &phi, const Matrix &h0, double coupling,
                      const Matrix &sz) {
  const double n2 = phi.squaredNorm();
  const double expectation = (phi.adjoint() * sz * phi)(0).real() / n2;
  const Matrix h = h0 + coupling * expectation * sz;
  return Complex(0.0, -1.0) * (h * phi);
}

} // namespace

PureState mean_field_trajectory(const PureState &psi,
                                const MeanFieldParams &params) {
  if (psi.dim() != 2)
    throw InvalidDynamics("mean_field_trajectory: qubit states only");
  if (params.h0.rows() != 2 || params.h0.cols() != 2)
    throw InvalidDynamics("mean_field_trajectory: h0 must be 2x2");
  if (hermitian_deviation(params.h0) > tol::kHermitian)
    throw InvalidDynamics("mean_field_trajectory: h0 must be Hermitian");
  if (params.steps < 1)
    throw InvalidDynamics("mean_field_trajectory: steps must be >= 1");

  const Matrix sz = qubit::pauli_z();
  const double h = params.time / params.steps;
  Vector phi = psi.amplitudes();
  for (int step = 0; step < params.steps; ++step) {
    const Vector k1 = mean_field_rhs(phi, params.h0, params.coupling, sz);
    const Vector k2 =
        mean_field_rhs(phi + 0.5 * h * k1, params.h0, params.coupling, sz);
    const Vector k3 =
        mean_field_rhs(phi + 0.5 * h * k2, params.h0, params.coupling, sz);
    const Vector k4 =
        mean_field_rhs(phi + h * k3, params.h0, params.coupling, sz);
    phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    phi /= phi.norm();
  }
  return PureState(phi);
}

MeanFieldParams mean_field_demo_params() {
  return {qubit::pauli_x(), 1.0, M_PI, 1000};
}

DensityMatrix DynamicsMap::evaluate(const PureState &psi) const {
  if (psi.dim() != dim_in_)
    throw DimensionError("DynamicsMap: input dimension mismatch");
  return evaluator_(psi);
}

void DynamicsMap::check_registration() const {
  for (int i = 0; i < 20; ++i) {
    const PureState probe =
        random_pure(dim_in_, sub_seed(kRegistrationSeed, i));
    DensityMatrix out = [&] {
      try {
        return evaluator_(probe);
      } catch (const InvalidDynamics &) {
        throw;
      } catch (const Error &e) {
        throw InvalidDynamics(std::string("DynamicsMap registration: "
                                          "evaluator failed on a random "
                                          "input: ") +
                              e.what());
      }
    }();
    if (out.dim() != dim_out_)
      throw InvalidDynamics(
          "DynamicsMap registration: output dimension mismatch");
  }
}

DynamicsMap DynamicsMap::linear(LinearMapSpec spec) {
  DynamicsMap g;
  g.kind_ = Kind::Linear;
  g.label_ = "linear";
  g.dim_in_ = spec.dim_in();
  g.dim_out_ = spec.dim_out();
  g.linear_.push_back(spec);
  g.evaluator_ = [spec = std::move(spec)](const PureState &psi) {
    const MapOutput out = apply(spec, DensityMatrix::pure(psi));
    if (!out.is_state)
      throw InvalidDynamics(
          "DynamicsMap: linear map produced a non-state output");
    return out.state();
  };
  g.check_registration();
  return g;
}

DynamicsMap DynamicsMap::perfect_cloner(int dim) {
  if (dim < 2)
    throw InvalidDynamics("perfect_cloner: dimension must be >= 2");
  DynamicsMap g;
  g.kind_ = Kind::BuiltinNonlinear;
  g.label_ = "perfect-cloner";
  g.dim_in_ = dim;
  g.dim_out_ = dim * dim;
  g.evaluator_ = [](const PureState &psi) {
    return DensityMatrix::pure(tensor(psi, psi));
  };
  g.check_registration();
  return g;
}

DynamicsMap DynamicsMap::mean_field_qubit(MeanFieldParams params) {
  DynamicsMap g;
  g.kind_ = Kind::BuiltinNonlinear;
  g.label_ = "mean-field-qubit";
  g.dim_in_ = 2;
  g.dim_out_ = 2;
  g.evaluator_ = [params = std::move(params)](const PureState &psi) {
    return DensityMatrix::pure(mean_field_trajectory(psi, params));
  };
  g.check_registration();
  return g;
}

DynamicsMap DynamicsMap::external(int dim_in, int dim_out,
                                  Evaluator evaluator, std::string label) {
  if (dim_in < 1 || dim_out < 1)
    throw DimensionError("DynamicsMap: dimensions must be >= 1");
  if (!evaluator)
    throw InvalidDynamics("DynamicsMap: empty evaluator");
  DynamicsMap g;
  g.kind_ = Kind::External;
  g.label_ = std::move(label);
  g.dim_in_ = dim_in;
  g.dim_out_ = dim_out;
  g.evaluator_ = std::move(evaluator);
  g.check_registration();
  return g;
}

DynamicsMap builtin_nonlinear(const std::string &name) {
  if (name == "perfect-cloner")
    return DynamicsMap::perfect_cloner(2);
  if (name == "mean-field-qubit")
    return DynamicsMap::mean_field_qubit(mean_field_demo_params());
  throw InvalidDynamics("builtin_nonlinear: unknown map '" + name + "'");
}

DynamicsMap builtin_nonlinear(const std::string &name,
                              const MeanFieldParams &params) {
  if (name == "mean-field-qubit")
    return DynamicsMap::mean_field_qubit(params);
  if (name == "perfect-cloner")
    throw InvalidDynamics(
        "builtin_nonlinear: perfect-cloner takes no parameters");
  throw InvalidDynamics("builtin_nonlinear: unknown map '" + name + "'");
}

} // namespace nosig
