#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/hubbard/fock_basis.hpp"

namespace dbq::hubbard {

/// Parameters of the extended Hubbard model on `n_sites` DB sites (all eV).
///
///   H = sum_{i,s} (E_os + eta_i) n_is - sum_{i<j,s} T_ij (c+_is c_js + h.c.)
///     + sum_i U_i n_iu n_id + sum_{i<j,s,s'} W_{is,js'} n_is n_js' + V
///   2V = sum_{i<j,s} V_ij (n_is - n_js)
///
/// `v_bias` is stored antisymmetric (V_ji = -V_ij) so that relabeling sites
/// keeps the same operator.
struct HubbardParams {
  std::size_t n_sites = 0;
  double e_os = 0.0;
  Eigen::VectorXd eta;
  Eigen::MatrixXd t_hop;
  Eigen::VectorXd u_onsite;
  Eigen::MatrixXd v_bias;
  /// W indexed by (i, j) with the 2x2 spin block [s][s'] flattened; symmetric
  /// under (i,s) <-> (j,s').
  std::vector<std::array<double, 4>> w_spin;

  explicit HubbardParams(std::size_t n = 0)
      : n_sites(n),
        eta(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))),
        t_hop(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
        u_onsite(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))),
        v_bias(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
        w_spin(n * n, {0.0, 0.0, 0.0, 0.0}) {}

  double w(std::size_t i, Spin si, std::size_t j, Spin sj) const {
    return w_spin[i * n_sites + j][2 * static_cast<int>(si) + static_cast<int>(sj)];
  }

  void set_hopping(std::size_t i, std::size_t j, double t) { t_hop(i, j) = t_hop(j, i) = t; }

  /// Spin-independent intersite repulsion.
  void set_w(std::size_t i, std::size_t j, double value) {
    w_spin[i * n_sites + j] = {value, value, value, value};
    w_spin[j * n_sites + i] = {value, value, value, value};
  }

  void set_bias(std::size_t i, std::size_t j, double v) {
    v_bias(i, j) = v;
    v_bias(j, i) = -v;
  }

  void validate() const {
    const auto n = static_cast<Eigen::Index>(n_sites);
    if (eta.size() != n || u_onsite.size() != n || t_hop.rows() != n || t_hop.cols() != n || v_bias.rows() != n ||
        v_bias.cols() != n || w_spin.size() != n_sites * n_sites)
      throw StructuralError("HubbardParams: array dimensions do not match n_sites");
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (t_hop(i, j) != t_hop(j, i)) throw StructuralError("HubbardParams: t_hop must be symmetric");
        if (t_hop(i, j) < 0.0) throw DomainError("HubbardParams: t_hop must be >= 0");
        if (v_bias(i, j) != -v_bias(j, i)) throw StructuralError("HubbardParams: v_bias must be antisymmetric");
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const double wij = w(i, Spin(a), j, Spin(b));
            if (wij != w(j, Spin(b), i, Spin(a))) throw StructuralError("HubbardParams: W must be symmetric");
            if (wij < 0.0) throw DomainError("HubbardParams: W must be >= 0");
          }
      }
    }
  }
};

/// Dense real-symmetric matrix of the extended Hubbard Hamiltonian in `basis`.
/// Hopping carries the explicit minus sign and the fermionic parity of the
/// site-major orbital order.
inline Eigen::MatrixXd build_hamiltonian(const HubbardParams& p, const FockBasis& basis) {
  p.validate();
  if (p.n_sites != basis.n_sites())
    throw StructuralError("build_hamiltonian: params have " + std::to_string(p.n_sites) + " sites, basis has " +
                          std::to_string(basis.n_sites()));
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  const std::size_t n = p.n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const FockState st = basis.state(static_cast<std::size_t>(col));
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int ni = site_occupation(st, i);
      diag += (p.e_os + p.eta(static_cast<Eigen::Index>(i))) * ni;
      if (ni == 2) diag += p.u_onsite(static_cast<Eigen::Index>(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            if (occupied(st, orbital(i, Spin(a))) && occupied(st, orbital(j, Spin(b))))
              diag += p.w(i, Spin(a), j, Spin(b));
        diag += 0.5 * p.v_bias(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                (ni - site_occupation(st, j));
      }
    }
    h(col, col) = diag;

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double t = p.t_hop(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (i == j || t == 0.0) continue;
        for (int s = 0; s < 2; ++s) {
          const auto moved = hop(st, orbital(i, Spin(s)), orbital(j, Spin(s)));
          if (!moved) continue;
          const auto row = basis.index_of(moved->state);
          if (!row) continue;  // leaves the sector; only possible for a restricted basis
          h(static_cast<Eigen::Index>(*row), col) += -t * moved->sign;
        }
      }
    }
  }
  return 0.5 * (h + h.transpose());
}

inline constexpr Eigen::Index kMaxDenseDimension = 4096;

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

/// Full dense spectrum of a real-symmetric matrix of dimension <= 4096.
inline Spectrum ground_and_spectrum(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw StructuralError("ground_and_spectrum: matrix must be square");
  if (h.rows() > kMaxDenseDimension)
    throw CapacityError("ground_and_spectrum: dimension " + std::to_string(h.rows()) +
                        " exceeds 4096; restrict to an (N_e, S_z) sector");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("ground_and_spectrum: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// max_k ||H v_k - lambda_k v_k|| / ||H||_F.
inline double max_relative_residual(const Eigen::MatrixXd& h, const Spectrum& s) {
  const double scale = std::max(h.norm(), 1e-300);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k)
    worst = std::max(worst, (h * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm() / scale);
  return worst;
}

}  // namespace dbq::hubbard
