#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/hubbard/fock_basis.hpp"
#include "dbq/hubbard/hamiltonian.hpp"
#include "dbq/layout.hpp"
#include "dbq/pauli.hpp"

namespace dbq::hubbard {

/// Result of restricting the Hubbard Hamiltonian to the charge-qubit
/// configurations. Qubit k is pair k of the layout; |0> means the excess
/// electron sits on the pair's left site.
struct EffectiveQubitCoefficients {
  PauliXZ pauli;
  Eigen::MatrixXd restricted;  // P^T H P, 2^N x 2^N
  double residual = 0.0;       // Frobenius norm outside span{1, X_k, Z_k, Z_a Z_b}
};

/// Site permutation placing every pair's (left, right) sites next to each
/// other, pair by pair. With this ordering intra-pair hops never cross an
/// orbital of another pair, so no Jordan-Wigner string couples the qubits.
inline std::vector<std::size_t> pair_major_order(const DeviceLayout& layout) {
  std::vector<std::size_t> order;
  for (const auto& p : layout.pairs) {
    order.push_back(p.left);
    order.push_back(p.right);
  }
  return order;
}

inline HubbardParams permute_sites(const HubbardParams& p, const std::vector<std::size_t>& order) {
  HubbardParams q(order.size());
  q.e_os = p.e_os;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const auto ia = static_cast<Eigen::Index>(order[a]);
    q.eta(static_cast<Eigen::Index>(a)) = p.eta(ia);
    q.u_onsite(static_cast<Eigen::Index>(a)) = p.u_onsite(ia);
    for (std::size_t b = 0; b < order.size(); ++b) {
      const auto ib = static_cast<Eigen::Index>(order[b]);
      q.t_hop(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = p.t_hop(ia, ib);
      q.v_bias(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = p.v_bias(ia, ib);
      q.w_spin[a * q.n_sites + b] = p.w_spin[order[a] * p.n_sites + order[b]];
    }
  }
  return q;
}

/// Restricts the Hubbard Hamiltonian to the configurations with three
/// electrons per pair, {left doubly occupied, right doubly occupied}^N, all
/// singly occupied orbitals spin-up, and expands the 2^N block in
/// {1, X_k, Z_k, Z_a Z_b}. In this gauge the tunneling term appears as +T X.
inline EffectiveQubitCoefficients project_to_qubits(const HubbardParams& params, const DeviceLayout& layout) {
  params.validate();
  if (layout.pairs.empty()) throw StructuralError("project_to_qubits: layout has no pairs");
  const auto owner = layout.pair_membership();
  if (params.n_sites != layout.sites.size())
    throw StructuralError("project_to_qubits: params and layout disagree on the number of sites");
  constexpr auto npos = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] == npos) throw StructuralError("project_to_qubits: site " + std::to_string(i) + " is unpaired");
  for (std::size_t i = 0; i < params.n_sites; ++i)
    for (std::size_t j = 0; j < params.n_sites; ++j)
      if (owner[i] != owner[j] && params.t_hop(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0)
        throw ProjectionError("project_to_qubits: nonzero hopping between sites " + std::to_string(i) + " and " +
                              std::to_string(j) + " of different pairs");

  const std::size_t n_q = layout.pairs.size();
  const auto p = permute_sites(params, pair_major_order(layout));
  const auto basis = build_basis(2 * n_q, static_cast<int>(3 * n_q), 0.5 * static_cast<double>(n_q));
  const Eigen::MatrixXd h = build_hamiltonian(p, basis);

  const std::size_t dim = std::size_t{1} << n_q;
  std::vector<std::size_t> index(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    FockState st = 0;
    for (std::size_t q = 0; q < n_q; ++q) {
      const std::size_t left = 2 * q, right = 2 * q + 1;
      const bool excess_right = (c & qubit_mask(q, n_q)) != 0;
      st |= FockState{1} << orbital(left, Spin::kUp);
      st |= FockState{1} << orbital(right, Spin::kUp);
      st |= FockState{1} << orbital(excess_right ? right : left, Spin::kDown);
    }
    index[c] = *basis.index_of(st);
  }

  EffectiveQubitCoefficients out;
  out.restricted.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      out.restricted(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          h(static_cast<Eigen::Index>(index[a]), static_cast<Eigen::Index>(index[b]));
  out.pauli = decompose_xz(out.restricted, n_q, &out.residual);
  return out;
}

}  // namespace dbq::hubbard
