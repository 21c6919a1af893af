#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "dbq/errors.hpp"

namespace dbq {

/// Qubit 0 is the most significant bit of a computational-basis index.
inline std::size_t qubit_mask(std::size_t qubit, std::size_t n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

/// Eigenvalue of Z_qubit on basis state `index`.
inline double z_sign(std::size_t index, std::size_t qubit, std::size_t n_qubits) {
  return (index & qubit_mask(qubit, n_qubits)) ? -1.0 : 1.0;
}

/// Real operator in span{1, X_k, Z_k, Z_a Z_b}.
struct PauliXZ {
  std::size_t n_qubits = 0;
  double identity = 0.0;
  std::vector<double> x;
  std::vector<double> z;
  Eigen::MatrixXd zz;  // upper triangle (a < b) is used

  explicit PauliXZ(std::size_t n = 0)
      : n_qubits(n), x(n, 0.0), z(n, 0.0), zz(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

  double zz_at(std::size_t a, std::size_t b) const {
    return a < b ? zz(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))
                 : zz(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
  }

  Eigen::MatrixXd matrix() const {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t c = 0; c < dim; ++c) {
      double diag = identity;
      for (std::size_t q = 0; q < n_qubits; ++q) {
        const double zq = z_sign(c, q, n_qubits);
        diag += z[q] * zq;
        for (std::size_t r = q + 1; r < n_qubits; ++r) diag += zz_at(q, r) * zq * z_sign(c, r, n_qubits);
        m(static_cast<Eigen::Index>(c ^ qubit_mask(q, n_qubits)), static_cast<Eigen::Index>(c)) += x[q];
      }
      m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c)) += diag;
    }
    return m;
  }
};

/// Projects a real 2^N x 2^N matrix onto span{1, X_k, Z_k, Z_a Z_b} with the
/// Hilbert-Schmidt inner product; `residual` receives the Frobenius norm of
/// the remainder.
inline PauliXZ decompose_xz(const Eigen::MatrixXd& m, std::size_t n_qubits, double* residual = nullptr) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim))
    throw StructuralError("decompose_xz: matrix dimension is not 2^n_qubits");
  PauliXZ out(n_qubits);
  const double inv = 1.0 / static_cast<double>(dim);
  out.identity = m.trace() * inv;
  for (std::size_t c = 0; c < dim; ++c) {
    const double diag = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    for (std::size_t q = 0; q < n_qubits; ++q) {
      const double zq = z_sign(c, q, n_qubits);
      out.z[q] += diag * zq * inv;
      out.x[q] += m(static_cast<Eigen::Index>(c ^ qubit_mask(q, n_qubits)), static_cast<Eigen::Index>(c)) * inv;
      for (std::size_t r = q + 1; r < n_qubits; ++r)
        out.zz(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(r)) += diag * zq * z_sign(c, r, n_qubits) * inv;
    }
  }
  if (residual) *residual = (m - out.matrix()).norm();
  return out;
}

}  // namespace dbq
