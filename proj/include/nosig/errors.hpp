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

#include <stdexcept>
#include <string>

namespace nosig {

// Base class for all faults raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Incompatible dimensions between operands.
class DimensionError : public Error {
public:
  using Error::Error;
};

// A value violates its type invariants (norm, hermiticity, trace, ...).
class InvalidState : public Error {
public:
  using Error::Error;
};

// Two objects that must share a density matrix do not.
class MismatchedDensity : public Error {
public:
  MismatchedDensity(const std::string &what, double trace_distance)
      : Error(what), trace_distance(trace_distance) {}
  double trace_distance;
};

// Requested ensemble size cannot realize the target density matrix.
class InfeasibleEnsemble : public Error {
public:
  using Error::Error;
};

// A probability or other bounded quantity left its admissible range by
// more than numerical tolerance.
class NumericalIntegrityError : public Error {
public:
  using Error::Error;
};

// A Choi matrix has a negative eigenvalue beyond tolerance.
class NotCompletelyPositive : public Error {
public:
  NotCompletelyPositive(const std::string &what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

// A dynamics evaluator produced something that is not a density matrix.
class InvalidDynamics : public Error {
public:
  using Error::Error;
};

// Input admits no test (e.g. a pure state has a unique decomposition).
class DegenerateInput : public Error {
public:
  using Error::Error;
};

// A steering protocol failed verification against the shared state.
class ProtocolError : public Error {
public:
  using Error::Error;
};

// Malformed scenario/JSON input.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace nosig
