#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "dbq/errors.hpp"

namespace dbq::gates {

using cd = std::complex<double>;

struct GateTarget {
  Eigen::MatrixXcd unitary;
  std::string label;

  GateTarget(Eigen::MatrixXcd u, std::string l) : unitary(std::move(u)), label(std::move(l)) {
    const auto d = unitary.rows();
    if (unitary.cols() != d || (d != 2 && d != 4)) throw StructuralError("GateTarget: expected a 2x2 or 4x4 matrix");
    if ((unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-10)
      throw DomainError("GateTarget: matrix is not unitary");
  }

  std::size_t dim() const { return static_cast<std::size_t>(unitary.rows()); }
};

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// exp(-i theta X / 2)
inline GateTarget rx_target(double theta) {
  Eigen::Matrix2cd m;
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  m << c, cd(0.0, -s), cd(0.0, -s), c;
  return {m, "Rx(" + std::to_string(theta) + ")"};
}

inline GateTarget x_target() { return {pauli_x(), "X"}; }

/// exp(-i theta Z / 2)
inline GateTarget rz_target(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -0.5 * theta);
  m(1, 1) = std::polar(1.0, 0.5 * theta);
  return {m, "Rz(" + std::to_string(theta) + ")"};
}

/// diag(1, 1, 1, e^{i phi})
inline GateTarget cphase_target(double phi) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(3, 3) = std::polar(1.0, phi);
  return {m, "CPHASE(" + std::to_string(phi) + ")"};
}

/// exp(-i sign (phi/4) Z Z), locally equivalent to CPHASE(phi).
inline GateTarget zz_phase_target(double phi, double sign = 1.0) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) {
    const double parity = (k == 0 || k == 3) ? 1.0 : -1.0;
    m(k, k) = std::polar(1.0, -sign * 0.25 * phi * parity);
  }
  return {m, "ZZ(" + std::to_string(phi) + ")"};
}

struct FidelityReport {
  double process_fidelity = 0.0;
  double average_gate_fidelity = 0.0;
  std::size_t dim = 0;
  bool decoherence = false;

  double infidelity() const { return 1.0 - average_gate_fidelity; }
};

inline double average_from_process(double f_pro, std::size_t d) {
  const auto dd = static_cast<double>(d);
  return (dd * f_pro + 1.0) / (dd + 1.0);
}

/// F_pro = |Tr(V^dag U)|^2 / d^2
inline FidelityReport gate_fidelity(const Eigen::MatrixXcd& achieved, const GateTarget& target) {
  if (achieved.rows() != target.unitary.rows() || achieved.cols() != target.unitary.cols())
    throw StructuralError("gate_fidelity: dimension mismatch");
  const auto d = target.dim();
  FidelityReport r;
  r.dim = d;
  r.process_fidelity = std::norm((target.unitary.adjoint() * achieved).trace()) / static_cast<double>(d * d);
  r.average_gate_fidelity = average_from_process(r.process_fidelity, d);
  return r;
}

/// Linear map on d x d operators.
using Channel = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

/// F_pro = (1/d^2) sum_ij <i| V^dag Lambda(|i><j|) V |j>
inline FidelityReport channel_fidelity(const Channel& channel, const GateTarget& target) {
  const auto d = static_cast<Eigen::Index>(target.dim());
  const Eigen::MatrixXcd& v = target.unitary;
  cd sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
      e(i, j) = 1.0;
      const Eigen::MatrixXcd out = channel(e);
      if (out.rows() != d || out.cols() != d) throw StructuralError("channel_fidelity: dimension mismatch");
      sum += (v.adjoint() * out * v)(i, j);
    }
  }
  FidelityReport r;
  r.dim = static_cast<std::size_t>(d);
  r.decoherence = true;
  r.process_fidelity = std::clamp(sum.real() / static_cast<double>(d * d), 0.0, 1.0);
  r.average_gate_fidelity = average_from_process(r.process_fidelity, r.dim);
  return r;
}

}  // namespace dbq::gates
