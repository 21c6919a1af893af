#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/pauli.hpp"
#include "dbq/qubit/params.hpp"

namespace dbq::qubit {

inline constexpr std::size_t kMaxQubits = 12;

/// Pauli coefficients of H_q for the given per-qubit tilts.
inline PauliXZ hq_coefficients(const QubitParams& p, const std::vector<double>& deltav) {
  p.validate();
  if (p.n_qubits > kMaxQubits) throw CapacityError("build_hq: at most 12 qubits are supported");
  if (deltav.size() != p.n_qubits) throw StructuralError("build_hq: tilt vector has the wrong length");
  PauliXZ c(p.n_qubits);
  c.identity = p.kappa();
  for (std::size_t q = 0; q < p.n_qubits; ++q) {
    c.x[q] = p.t_of(q);
    c.z[q] = 0.5 * deltav[q] + p.z_static[q];
    for (std::size_t r = q + 1; r < p.n_qubits; ++r)
      c.zz(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(r)) = p.zz(q, r);
  }
  return c;
}

/// H_q = kappa 1 + sum_k [T X_k + (dV_k/2 + z_k) Z_k] + sum_{a<b} c_ab Z_a Z_b
inline Eigen::MatrixXd build_hq(const QubitParams& p, const std::vector<double>& deltav) {
  return hq_coefficients(p, deltav).matrix();
}

/// (|0> + |1>)/sqrt2 and (|0> - |1>)/sqrt2.
inline std::pair<Eigen::Vector2cd, Eigen::Vector2cd> conjugate_basis_states() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Eigen::Vector2cd(r, r), Eigen::Vector2cd(r, -r)};
}

}  // namespace dbq::qubit
