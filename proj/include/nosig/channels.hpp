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

#ifndef NOSIG_CHANNELS_HPP
#define NOSIG_CHANNELS_HPP

#include <cstdint>
#include <vector>

#include "nosig/exec.hpp"
#include "nosig/types.hpp"

namespace nosig {

/// Unnormalized Choi convention J = Sum_ij |i><j| (x) g(|i><j|), input
/// index slow. With this choice trace preservation reads
/// "Tr_out J = identity" with no dimension factors.
class ChoiMatrix {
public:
  ChoiMatrix(int dim_in, int dim_out, Matrix matrix);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const Matrix &matrix() const { return matrix_; }

private:
  int dim_in_;
  int dim_out_;
  Matrix matrix_;
};

class KrausChannel {
public:
  KrausChannel(int dim_in, int dim_out, std::vector<Matrix> operators);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix> &operators() const { return operators_; }
  /// max-abs deviation of Sum K_i'K_i from the identity. Zero only for
  /// trace-preserving channels; reported, never silently assumed.
  double closure_deviation() const;

private:
  int dim_in_;
  int dim_out_;
  std::vector<Matrix> operators_;
};

/// A linear map in whichever representation it arrived: Kraus operators,
/// a Choi matrix, or a named builtin expanded to exact matrices on demand.
class LinearMapSpec {
public:
  enum class Kind { Kraus, Choi, Identity, Transpose, Depolarizing, Unitary };

  static LinearMapSpec kraus(KrausChannel channel);
  static LinearMapSpec choi(ChoiMatrix choi);
  static LinearMapSpec identity(int dim);
  static LinearMapSpec transpose(int dim);
  static LinearMapSpec depolarizing(int dim, double lambda);
  static LinearMapSpec unitary(Matrix u);

  Kind kind() const { return kind_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  ChoiMatrix to_choi() const;

  const KrausChannel &kraus_channel() const;
  const ChoiMatrix &choi_matrix() const;
  double lambda() const { return lambda_; }
  const Matrix &unitary_matrix() const;

private:
  LinearMapSpec() = default;

  Kind kind_ = Kind::Identity;
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<KrausChannel> kraus_;
  std::vector<ChoiMatrix> choi_;
  double lambda_ = 0.0;
  Matrix unitary_;
};

ChoiMatrix choi_from_kraus(const KrausChannel &channel);

/// Eigendecompose J and keep one Kraus operator per eigenvalue above
/// cutoff. An eigenvalue below -cutoff*dim raises NotCompletelyPositive
/// carrying the offender.
KrausChannel kraus_from_choi(const ChoiMatrix &choi, double cutoff = tol::kKrausCutoff);

/// Result of pushing a density matrix through a map. Non-positive maps
/// produce perfectly good matrices that fail the state invariants; the
/// counterexamples need to inspect those, so they are values, not errors.
struct MapOutput {
  Matrix matrix;
  double min_eigenvalue;
  bool is_state;
  DensityMatrix state() const; // throws InvalidState when !is_state
};

MapOutput apply(const LinearMapSpec &map, const DensityMatrix &rho);

struct CpResult {
  bool completely_positive;
  double min_eigenvalue;
};

/// CP iff the Choi matrix is positive semidefinite (min eigenvalue above
/// -1e-9 * dim).
CpResult is_completely_positive(const ChoiMatrix &choi);

struct TpResult {
  bool trace_preserving;
  double max_deviation;
};

/// TP iff the partial trace of J over the output factor is the identity
/// on the input space (max-abs deviation below 1e-9).
TpResult is_trace_preserving(const ChoiMatrix &choi);

struct SampledPositivity {
  bool positive;
  double worst; // most negative output eigenvalue seen
  int samples;
};

/// Sampled, necessary-condition positivity check: min output eigenvalue
/// over Haar-random pure inputs. Sample i draws from sub_seed(seed, i),
/// so the outcome is independent of the worker count.
SampledPositivity is_positive_sampled(const LinearMapSpec &map, int n_samples,
                                      uint64_t seed,
                                      ExecPolicy policy = ExecPolicy::Serial);

struct ExtendedOutput {
  Matrix matrix;
  double min_eigenvalue;
};

/// (g (x) 1)(rho_AB): the map acts on the A factor, the B factor rides
/// along. A negative eigenvalue here on an entangled state is the
/// operational signature of a non-CP map.
ExtendedOutput extend_and_apply(const LinearMapSpec &map,
                                const DensityMatrix &rho_ab, int dim_a,
                                int dim_b);

} // namespace nosig

#endif
