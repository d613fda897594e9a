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

#ifndef NOSIG_DYNAMICS_HPP
#define NOSIG_DYNAMICS_HPP

#include <functional>
#include <string>

#include "nosig/channels.hpp"
#include "nosig/types.hpp"

namespace nosig {

/// Mean-field qubit evolution: |psi> integrated for `time` under
/// H(psi) = h0 + coupling * <psi|sigma_z|psi> * sigma_z, fixed-step RK4
/// with renormalization after every step.
struct MeanFieldParams {
  Matrix h0;
  double coupling = 0.0;
  double time = 0.0;
  int steps = 1000;
};

PureState mean_field_trajectory(const PureState &psi,
                                const MeanFieldParams &params);

/// The documented demo operating point: h0 = sigma_x, coupling 1, time pi,
/// 1000 steps. Strong enough that same-density ensembles evolve apart.
MeanFieldParams mean_field_demo_params();

/// Dynamics under test: any rule taking pure states to density matrices.
/// Linear channels, the two builtin nonlinear maps, or an arbitrary
/// callable. Construction evaluates 20 seeded random inputs and rejects
/// rules whose outputs are not valid states of the declared dimension.
class DynamicsMap {
public:
  enum class Kind { Linear, BuiltinNonlinear, External };
  using Evaluator = std::function<DensityMatrix(const PureState &)>;

  static DynamicsMap linear(LinearMapSpec spec);
  /// g(P_psi) = P_psi (x) P_psi. State-valued on every pure input, yet
  /// not linear in the density matrix: the classic signaling offender.
  static DynamicsMap perfect_cloner(int dim);
  static DynamicsMap mean_field_qubit(MeanFieldParams params);
  static DynamicsMap external(int dim_in, int dim_out, Evaluator evaluator,
                              std::string label = "external");

  Kind kind() const { return kind_; }
  const std::string &label() const { return label_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  DensityMatrix evaluate(const PureState &psi) const;
  /// Non-null only for Kind::Linear.
  const LinearMapSpec *linear_spec() const {
    return linear_.empty() ? nullptr : &linear_.front();
  }

private:
  DynamicsMap() = default;
  void check_registration() const;

  Kind kind_ = Kind::External;
  std::string label_;
  int dim_in_ = 0;
  int dim_out_ = 0;
  Evaluator evaluator_;
  std::vector<LinearMapSpec> linear_;
};

/// name is "perfect-cloner" (qubit) or "mean-field-qubit" (demo
/// parameters); anything else raises InvalidDynamics.
DynamicsMap builtin_nonlinear(const std::string &name);
DynamicsMap builtin_nonlinear(const std::string &name,
                              const MeanFieldParams &params);

} // namespace nosig

#endif
