#pragma once

#include <cstdint>
#include <random>

#include "dbq/dynamics/state.hpp"
#include "dbq/errors.hpp"

namespace dbq::dynamics {

struct Counts {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t shots() const { return n0 + n1; }
  double fraction0() const { return static_cast<double>(n0) / static_cast<double>(shots()); }
  double fraction1() const { return static_cast<double>(n1) / static_cast<double>(shots()); }
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Born-rule Z sampling of one qubit. Shot k consumes draw k of an
/// mt19937_64 seeded with `seed`; the outcome is 1 when the draw is >= P(0).
inline Counts measure_z(const QuantumState& state, std::size_t qubit, std::uint64_t shots, std::uint64_t seed) {
  if (qubit >= state.n_qubits()) throw DomainError("measure_z: qubit index out of range");
  if (shots == 0) throw DomainError("measure_z: shots must be >= 1");
  const double p0 = 1.0 - state.population1(qubit);
  std::mt19937_64 rng(seed);
  Counts c;
  for (std::uint64_t s = 0; s < shots; ++s) (uniform01(rng) < p0 ? c.n0 : c.n1) += 1;
  return c;
}

}  // namespace dbq::dynamics
