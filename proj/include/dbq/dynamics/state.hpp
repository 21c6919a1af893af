#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/pauli.hpp"

namespace dbq::dynamics {

using cd = std::complex<double>;

/// Register state: either a state vector or a density matrix over 2^N levels.
class QuantumState {
 public:
  static QuantumState basis(std::size_t n_qubits, std::size_t index) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) throw DomainError("QuantumState::basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return pure(std::move(v));
  }

  static QuantumState pure(Eigen::VectorXcd psi, double time = 0.0) {
    const std::size_t n = qubits_for(static_cast<std::size_t>(psi.size()));
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw DomainError("QuantumState: state vector is not normalized");
    return QuantumState(n, std::move(psi), time);
  }

  static QuantumState mixed(Eigen::MatrixXcd rho, double time = 0.0) {
    if (rho.rows() != rho.cols()) throw StructuralError("QuantumState: density matrix must be square");
    const std::size_t n = qubits_for(static_cast<std::size_t>(rho.rows()));
    if ((rho - rho.adjoint()).norm() > 1e-10) throw DomainError("QuantumState: density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-9) throw DomainError("QuantumState: density matrix trace is not 1");
    return QuantumState(n, std::move(rho), time);
  }

  /// Density matrix without validation, for integrator output.
  static QuantumState raw_mixed(Eigen::MatrixXcd rho, double time) {
    const std::size_t n = qubits_for(static_cast<std::size_t>(rho.rows()));
    return QuantumState(n, std::move(rho), time);
  }

  bool is_pure() const { return std::holds_alternative<Eigen::VectorXcd>(data_); }
  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  const Eigen::VectorXcd& vector() const {
    if (!is_pure()) throw StructuralError("QuantumState: not a pure state");
    return std::get<Eigen::VectorXcd>(data_);
  }
  const Eigen::MatrixXcd& density() const {
    if (is_pure()) throw StructuralError("QuantumState: not a density matrix");
    return std::get<Eigen::MatrixXcd>(data_);
  }
  Eigen::MatrixXcd to_density() const {
    if (is_pure()) return vector() * vector().adjoint();
    return density();
  }
  QuantumState as_mixed() const { return is_pure() ? raw_mixed(to_density(), time_) : *this; }

  double probability(std::size_t index) const {
    const auto i = static_cast<Eigen::Index>(index);
    return is_pure() ? std::norm(vector()(i)) : density()(i, i).real();
  }

  /// Probability that qubit q reads 1.
  double population1(std::size_t q) const {
    if (q >= n_qubits_) throw DomainError("QuantumState: qubit index out of range");
    double p = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
      if (i & qubit_mask(q, n_qubits_)) p += probability(i);
    return p;
  }

  std::vector<double> populations1() const {
    std::vector<double> out(n_qubits_);
    for (std::size_t q = 0; q < n_qubits_; ++q) out[q] = population1(q);
    return out;
  }

  double purity() const {
    if (is_pure()) return std::pow(vector().squaredNorm(), 2);
    return (density() * density()).trace().real();
  }

  double trace() const { return is_pure() ? vector().squaredNorm() : density().trace().real(); }

 private:
  QuantumState(std::size_t n, std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> d, double t)
      : n_qubits_(n), data_(std::move(d)), time_(t) {}

  static std::size_t qubits_for(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) throw StructuralError("QuantumState: dimension must be 2^N, N >= 1");
    return static_cast<std::size_t>(std::countr_zero(dim));
  }

  std::size_t n_qubits_ = 0;
  std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> data_;
  double time_ = 0.0;
};

/// Tensor product of single-qubit states, qubit 0 first.
inline Eigen::VectorXcd kron(const std::vector<Eigen::Vector2cd>& qubits) {
  Eigen::VectorXcd v(1);
  v(0) = 1.0;
  for (const auto& q : qubits) {
    Eigen::VectorXcd next(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q(0);
      next(2 * i + 1) = v(i) * q(1);
    }
    v = std::move(next);
  }
  return v;
}

/// Single-qubit operator acting on qubit q of an n-qubit register.
inline Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, std::size_t q, std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t mask = qubit_mask(q, n_qubits);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const int b = (col & mask) ? 1 : 0;
    for (int a = 0; a < 2; ++a) {
      const std::size_t row = a ? (col | mask) : (col & ~mask);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += op(a, b);
    }
  }
  return m;
}

/// Smallest eigenvalue of the Hermitian part of rho.
inline double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace dbq::dynamics
