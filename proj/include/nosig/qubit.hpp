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

#ifndef NOSIG_QUBIT_HPP
#define NOSIG_QUBIT_HPP

#include <cmath>

#include "nosig/types.hpp"

// Small fixed qubit vocabulary used across tests and demos.
namespace nosig::qubit {

inline PureState ket0() {
  Vector v(2);
  v << 1.0, 0.0;
  return PureState(v);
}

inline PureState ket1() {
  Vector v(2);
  v << 0.0, 1.0;
  return PureState(v);
}

inline PureState ket_plus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState ket_minus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// (|00> + |11>)/sqrt(2)
inline BipartiteState bell_phi_plus() {
  Vector v(4);
  v << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  return BipartiteState(2, 2, v);
}

/// Equal mixture of |0>, |1>. Mixes to I/2.
inline Ensemble z_ensemble() {
  return Ensemble({{0.5, ket0()}, {0.5, ket1()}});
}

/// Equal mixture of |+>, |->. Also mixes to I/2.
inline Ensemble x_ensemble() {
  return Ensemble({{0.5, ket_plus()}, {0.5, ket_minus()}});
}

/// Three equiprobable states, Bloch vectors 120 degrees apart in the
/// X-Z plane. Pairwise overlap 1/4, mixes to I/2.
inline Ensemble trine_ensemble() {
  const double third = 1.0 / 3.0;
  auto bloch = [](double theta) {
    Vector v(2);
    v << std::cos(theta / 2.0), std::sin(theta / 2.0);
    return PureState(v);
  };
  return Ensemble({{third, bloch(0.0)},
                   {third, bloch(2.0 * M_PI / 3.0)},
                   {third, bloch(4.0 * M_PI / 3.0)}});
}

} // namespace nosig::qubit

#endif
