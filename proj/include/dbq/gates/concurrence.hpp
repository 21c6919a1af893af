#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "dbq/errors.hpp"

namespace dbq::gates {

/// 2 |a d - b c| for a two-qubit pure state (a, b, c, d).
inline double concurrence(const Eigen::VectorXcd& psi) {
  if (psi.size() != 4) throw StructuralError("concurrence: expected a two-qubit state");
  return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

/// Wootters concurrence of a two-qubit density matrix.
inline double concurrence(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw StructuralError("concurrence: expected a 4x4 density matrix");
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Eigen::Matrix4cd r = rho;
  const Eigen::Matrix4cd tilde = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r * tilde, false);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

}  // namespace dbq::gates
