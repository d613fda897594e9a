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

#include <cstdint>

#include "nosig/linalg.hpp"

namespace nosig {

class PureState;
class DensityMatrix;

// splitmix64 finalizer. Bit-stable across platforms and compilers, which
// keeps seeded runs and golden files reproducible everywhere.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic per-item seed. Work items seeded this way give results
// independent of how a loop over items is partitioned across workers.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

// Minimal counter-based generator (splitmix64 stream) with Box-Muller
// Gaussians. Standard library distributions are implementation-defined,
// so they are not used anywhere randomness must be reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian();

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random pure state: normalized standard complex Gaussian vector.
PureState random_pure(int dim, std::uint64_t seed);

// Random density matrix of the given rank: G G^dagger / Tr for a
// dim x rank complex Gaussian G.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
// phases folded back into Q.
Matrix random_unitary(int dim, std::uint64_t seed);

} // namespace nosig
