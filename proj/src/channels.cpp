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

#include "nosig/channels.hpp"

#include <cmath>
#include <string>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"

namespace nosig {

ChoiMatrix::ChoiMatrix(int dim_in, int dim_out, Matrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
  if (dim_in_ < 1 || dim_out_ < 1)
    throw DimensionError("ChoiMatrix: dimensions must be >= 1");
  const Eigen::Index n = static_cast<Eigen::Index>(dim_in_) * dim_out_;
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw DimensionError("ChoiMatrix: matrix must be (dimIn*dimOut)^2");
  const double dev = hermitian_deviation(matrix_);
  if (dev > tol::kHermitian)
    throw InvalidState("ChoiMatrix: hermiticity deviation " +
                       std::to_string(dev));
}

KrausChannel::KrausChannel(int dim_in, int dim_out,
                           std::vector<Matrix> operators)
    : dim_in_(dim_in), dim_out_(dim_out), operators_(std::move(operators)) {
  if (dim_in_ < 1 || dim_out_ < 1)
    throw DimensionError("KrausChannel: dimensions must be >= 1");
  if (operators_.empty())
    throw InvalidState("KrausChannel: needs at least one operator");
  for (const Matrix &k : operators_)
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw DimensionError("KrausChannel: operators must be dimOut x dimIn");
}

double KrausChannel::closure_deviation() const {
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix &k : operators_)
    sum += k.adjoint() * k;
  return max_abs(sum - Matrix::Identity(dim_in_, dim_in_));
}

LinearMapSpec LinearMapSpec::kraus(KrausChannel channel) {
  LinearMapSpec spec;
  spec.kind_ = Kind::Kraus;
  spec.dim_in_ = channel.dim_in();
  spec.dim_out_ = channel.dim_out();
  spec.kraus_.push_back(std::move(channel));
  return spec;
}

LinearMapSpec LinearMapSpec::choi(ChoiMatrix choi) {
  LinearMapSpec spec;
  spec.kind_ = Kind::Choi;
  spec.dim_in_ = choi.dim_in();
  spec.dim_out_ = choi.dim_out();
  spec.choi_.push_back(std::move(choi));
  return spec;
}

LinearMapSpec LinearMapSpec::identity(int dim) {
  if (dim < 1)
    throw DimensionError("LinearMapSpec: dimension must be >= 1");
  LinearMapSpec spec;
  spec.kind_ = Kind::Identity;
  spec.dim_in_ = spec.dim_out_ = dim;
  return spec;
}

LinearMapSpec LinearMapSpec::transpose(int dim) {
  if (dim < 1)
    throw DimensionError("LinearMapSpec: dimension must be >= 1");
  LinearMapSpec spec;
  spec.kind_ = Kind::Transpose;
  spec.dim_in_ = spec.dim_out_ = dim;
  return spec;
}

LinearMapSpec LinearMapSpec::depolarizing(int dim, double lambda) {
  if (dim < 1)
    throw DimensionError("LinearMapSpec: dimension must be >= 1");
  if (lambda < 0.0 || lambda > 1.0)
    throw InvalidState("LinearMapSpec: depolarizing weight outside [0,1]");
  LinearMapSpec spec;
  spec.kind_ = Kind::Depolarizing;
  spec.dim_in_ = spec.dim_out_ = dim;
  spec.lambda_ = lambda;
  return spec;
}

LinearMapSpec LinearMapSpec::unitary(Matrix u) {
  if (u.rows() < 1 || u.rows() != u.cols())
    throw DimensionError("LinearMapSpec: unitary must be square");
  const double dev = max_abs(u.adjoint() * u -
                             Matrix::Identity(u.rows(), u.cols()));
  if (dev > 1e-10)
    throw InvalidState("LinearMapSpec: unitarity deviation " +
                       std::to_string(dev));
  LinearMapSpec spec;
  spec.kind_ = Kind::Unitary;
  spec.dim_in_ = spec.dim_out_ = static_cast<int>(u.rows());
  spec.unitary_ = std::move(u);
  return spec;
}

const KrausChannel &LinearMapSpec::kraus_channel() const {
  if (kind_ != Kind::Kraus)
    throw InvalidState("LinearMapSpec: not a Kraus representation");
  return kraus_.front();
}

const ChoiMatrix &LinearMapSpec::choi_matrix() const {
  if (kind_ != Kind::Choi)
    throw InvalidState("LinearMapSpec: not a Choi representation");
  return choi_.front();
}

const Matrix &LinearMapSpec::unitary_matrix() const {
  if (kind_ != Kind::Unitary)
    throw InvalidState("LinearMapSpec: not a unitary map");
  return unitary_;
}

namespace {

// g applied to the matrix unit |i><j| for each builtin.
Matrix builtin_unit_image(const LinearMapSpec &map, int i, int j) {
  const int d = map.dim_in();
  Matrix unit = Matrix::Zero(d, d);
  unit(i, j) = 1.0;
  switch (map.kind()) {
  case LinearMapSpec::Kind::Identity:
    return unit;
  case LinearMapSpec::Kind::Transpose:
    return unit.transpose();
  case LinearMapSpec::Kind::Depolarizing: {
    const double l = map.lambda();
    Matrix out = (1.0 - l) * unit;
    if (i == j)
      out += (l / d) * Matrix::Identity(d, d);
    return out;
  }
  case LinearMapSpec::Kind::Unitary:
    return map.unitary_matrix() * unit * map.unitary_matrix().adjoint();
  default:
    throw InvalidState("builtin_unit_image: not a builtin");
  }
}

Matrix apply_choi(const ChoiMatrix &choi, const Matrix &rho) {
  const int din = choi.dim_in();
  const int dout = choi.dim_out();
  const Matrix &j = choi.matrix();
  Matrix out = Matrix::Zero(dout, dout);
  for (int i = 0; i < din; ++i)
    for (int jj = 0; jj < din; ++jj)
      for (int r = 0; r < dout; ++r)
        for (int s = 0; s < dout; ++s)
          out(r, s) += rho(i, jj) * j(i * dout + r, jj * dout + s);
  return out;
}

Matrix apply_raw(const LinearMapSpec &map, const Matrix &rho) {
  switch (map.kind()) {
  case LinearMapSpec::Kind::Identity:
    return rho;
  case LinearMapSpec::Kind::Transpose:
    return rho.transpose();
  case LinearMapSpec::Kind::Depolarizing: {
    const int d = map.dim_in();
    return (1.0 - map.lambda()) * rho +
           (map.lambda() / d) * rho.trace() * Matrix::Identity(d, d);
  }
  case LinearMapSpec::Kind::Unitary:
    return map.unitary_matrix() * rho * map.unitary_matrix().adjoint();
  case LinearMapSpec::Kind::Kraus: {
    const KrausChannel &c = map.kraus_channel();
    Matrix out = Matrix::Zero(c.dim_out(), c.dim_out());
    for (const Matrix &k : c.operators())
      out += k * rho * k.adjoint();
    return out;
  }
  case LinearMapSpec::Kind::Choi:
    return apply_choi(map.choi_matrix(), rho);
  }
  throw InvalidState("apply: unknown map kind");
}

} // namespace

ChoiMatrix LinearMapSpec::to_choi() const {
  if (kind_ == Kind::Choi)
    return choi_.front();
  if (kind_ == Kind::Kraus)
    return choi_from_kraus(kraus_.front());
  const int din = dim_in_;
  const int dout = dim_out_;
  Matrix j = Matrix::Zero(static_cast<Eigen::Index>(din) * dout,
                          static_cast<Eigen::Index>(din) * dout);
  for (int i = 0; i < din; ++i)
    for (int jj = 0; jj < din; ++jj) {
      const Matrix block = builtin_unit_image(*this, i, jj);
      for (int r = 0; r < dout; ++r)
        for (int s = 0; s < dout; ++s)
          j(i * dout + r, jj * dout + s) = block(r, s);
    }
  return ChoiMatrix(din, dout, hermitize(j));
}

ChoiMatrix choi_from_kraus(const KrausChannel &channel) {
  const int din = channel.dim_in();
  const int dout = channel.dim_out();
  const Eigen::Index n = static_cast<Eigen::Index>(din) * dout;
  Matrix j = Matrix::Zero(n, n);
  for (const Matrix &k : channel.operators()) {
    // vec(K)[i*dimOut + r] = K(r, i); J accumulates vec(K) vec(K)'.
    Vector v(n);
    for (int i = 0; i < din; ++i)
      for (int r = 0; r < dout; ++r)
        v(i * dout + r) = k(r, i);
    j += v * v.adjoint();
  }
  return ChoiMatrix(din, dout, hermitize(j));
}

KrausChannel kraus_from_choi(const ChoiMatrix &choi, double cutoff) {
  const int din = choi.dim_in();
  const int dout = choi.dim_out();
  const HermitianEigen eig = hermitian_eigen_sorted(choi.matrix());
  const double dim = static_cast<double>(eig.values.size());
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -cutoff * dim)
    throw NotCompletelyPositive(
        "kraus_from_choi: Choi matrix has negative eigenvalue " +
            std::to_string(min_eig),
        min_eig);
  std::vector<Matrix> operators;
  for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
    if (eig.values(a) <= cutoff)
      continue;
    const double w = std::sqrt(eig.values(a));
    Matrix k(dout, din);
    for (int i = 0; i < din; ++i)
      for (int r = 0; r < dout; ++r)
        k(r, i) = w * eig.vectors(i * dout + r, a);
    operators.push_back(std::move(k));
  }
  if (operators.empty())
    throw NumericalIntegrityError("kraus_from_choi: Choi matrix is zero");
  return KrausChannel(din, dout, std::move(operators));
}

DensityMatrix MapOutput::state() const {
  if (!is_state)
    throw InvalidState("MapOutput: output is not a density matrix");
  return DensityMatrix(matrix);
}

MapOutput apply(const LinearMapSpec &map, const DensityMatrix &rho) {
  if (rho.dim() != map.dim_in())
    throw DimensionError("apply: input dimension mismatch");
  MapOutput out;
  out.matrix = hermitize(apply_raw(map, rho.matrix()));
  out.min_eigenvalue = min_eigenvalue(out.matrix);
  const double trace_dev = std::abs(out.matrix.trace().real() - 1.0) +
                           std::abs(out.matrix.trace().imag());
  out.is_state =
      trace_dev <= tol::kTrace &&
      out.min_eigenvalue >= -tol::kPsdPerDim * static_cast<double>(map.dim_out());
  return out;
}

CpResult is_completely_positive(const ChoiMatrix &choi) {
  const double min_eig = min_eigenvalue(choi.matrix());
  const double dim = static_cast<double>(choi.matrix().rows());
  return {min_eig >= -tol::kCpPerDim * dim, min_eig};
}

TpResult is_trace_preserving(const ChoiMatrix &choi) {
  const int din = choi.dim_in();
  const int dout = choi.dim_out();
  Matrix reduced = Matrix::Zero(din, din);
  for (int i = 0; i < din; ++i)
    for (int jj = 0; jj < din; ++jj)
      for (int r = 0; r < dout; ++r)
        reduced(i, jj) += choi.matrix()(i * dout + r, jj * dout + r);
  const double dev = max_abs(reduced - Matrix::Identity(din, din));
  return {dev <= tol::kTracePreserving, dev};
}

SampledPositivity is_positive_sampled(const LinearMapSpec &map, int n_samples,
                                      uint64_t seed, ExecPolicy policy) {
  if (n_samples < 1)
    throw InvalidState("is_positive_sampled: need at least one sample");
  const auto [index, worst] = exec::min_reduce(
      policy, n_samples, [&](long long i) {
        const PureState psi =
            random_pure(map.dim_in(), sub_seed(seed, static_cast<uint64_t>(i)));
        return apply(map, DensityMatrix::pure(psi)).min_eigenvalue;
      });
  (void)index;
  return {worst >= -tol::kPositivitySample, worst, n_samples};
}

ExtendedOutput extend_and_apply(const LinearMapSpec &map,
                                const DensityMatrix &rho_ab, int dim_a,
                                int dim_b) {
  if (map.dim_in() != dim_a)
    throw DimensionError("extend_and_apply: map acts on dimA");
  if (rho_ab.dim() != dim_a * dim_b)
    throw DimensionError("extend_and_apply: rho.dim != dimA*dimB");
  const ChoiMatrix choi = map.to_choi();
  const int dout = map.dim_out();
  const Matrix &j = choi.matrix();
  const Matrix &rho = rho_ab.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dout) * dim_b,
                            static_cast<Eigen::Index>(dout) * dim_b);
  for (int a1 = 0; a1 < dim_a; ++a1)
    for (int a2 = 0; a2 < dim_a; ++a2)
      for (int r = 0; r < dout; ++r)
        for (int s = 0; s < dout; ++s) {
          const Complex weight = j(a1 * dout + r, a2 * dout + s);
          if (weight == Complex(0.0, 0.0))
            continue;
          for (int b1 = 0; b1 < dim_b; ++b1)
            for (int b2 = 0; b2 < dim_b; ++b2)
              out(r * dim_b + b1, s * dim_b + b2) +=
                  weight * rho(a1 * dim_b + b1, a2 * dim_b + b2);
        }
  out = hermitize(out);
  return {out, min_eigenvalue(out)};
}

} // namespace nosig
