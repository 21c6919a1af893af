#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/layout.hpp"
#include "dbq/material.hpp"
#include "dbq/well/calibration.hpp"

namespace dbq::qubit {

enum class ZzConvention { kProjected, kFull };

inline const char* to_string(ZzConvention c) { return c == ZzConvention::kProjected ? "projected" : "full"; }

inline ZzConvention parse_zz_convention(const std::string& s) {
  if (s == "projected") return ZzConvention::kProjected;
  if (s == "full") return ZzConvention::kFull;
  throw DomainError("unknown zz convention '" + s + "' (expected projected|full)");
}

/// Inputs of the N-qubit Hamiltonian, all in eV.
struct QubitParams {
  std::size_t n_qubits = 1;
  double t_tunnel = 0.0;
  std::vector<double> t_override;  // per qubit; empty means uniform t_tunnel
  double e_os = 0.0;
  double eta = 0.0;
  double u0 = 0.0;
  double w0 = 0.0;
  Eigen::MatrixXd w_same;   // symmetric, zero diagonal
  Eigen::MatrixXd w_cross;  // symmetric, zero diagonal
  /// Static Z offset from left/right-asymmetric inter-pair repulsion; zero for
  /// mirror-symmetric placements.
  std::vector<double> z_static;
  ZzConvention zz_convention = ZzConvention::kProjected;

  explicit QubitParams(std::size_t n = 1, double t = 0.0)
      : n_qubits(n),
        t_tunnel(t),
        w_same(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
        w_cross(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
        z_static(n, 0.0) {}

  double t_of(std::size_t q) const { return t_override.empty() ? t_tunnel : t_override.at(q); }

  double w_minus(std::size_t a, std::size_t b) const {
    return w_same(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -
           w_cross(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  double w_plus(std::size_t a, std::size_t b) const {
    return w_same(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +
           w_cross(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  /// ZZ coefficient between qubits a and b under the selected convention.
  double zz(std::size_t a, std::size_t b) const {
    const double wm = w_minus(a, b);
    return zz_convention == ZzConvention::kProjected ? 0.5 * wm : wm;
  }

  double kappa() const {
    double k = static_cast<double>(n_qubits) * (3.0 * e_os + 3.0 * eta + u0 + 2.0 * w0);
    for (std::size_t a = 0; a < n_qubits; ++a)
      for (std::size_t b = a + 1; b < n_qubits; ++b) k += 4.5 * w_plus(a, b);
    return k;
  }

  void set_coupling(std::size_t a, std::size_t b, double same, double cross) {
    const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
    w_same(i, j) = w_same(j, i) = same;
    w_cross(i, j) = w_cross(j, i) = cross;
  }

  void validate() const {
    const auto n = static_cast<Eigen::Index>(n_qubits);
    if (n_qubits == 0) throw StructuralError("QubitParams: n_qubits must be >= 1");
    if (w_same.rows() != n || w_same.cols() != n || w_cross.rows() != n || w_cross.cols() != n ||
        z_static.size() != n_qubits || (!t_override.empty() && t_override.size() != n_qubits))
      throw StructuralError("QubitParams: array dimensions do not match n_qubits");
    for (std::size_t q = 0; q < n_qubits; ++q)
      if (!(t_of(q) > 0.0)) throw DomainError("QubitParams: tunneling energy must be > 0");
    if (w_same != w_same.transpose() || w_cross != w_cross.transpose())
      throw StructuralError("QubitParams: inter-qubit repulsion must be symmetric");
  }
};

/// Where T comes from in geometry_to_params.
struct SplittingSource {
  enum class Kind { kCalibratedWell, kExplicit } kind = Kind::kExplicit;
  double splitting = 0.0;                          // eV, explicit
  const well::CalibratedWell* well = nullptr;      // calibrated
};

/// Per-site energies that only shift kappa.
struct SiteEnergies {
  double e_os = 0.0;
  double eta = 0.0;
  std::optional<double> u0;  // default: charged minus neutral DB level
};

/// Builds QubitParams from a pair layout. W between sites comes from the
/// screened Coulomb law; T is half the splitting of each pair.
inline QubitParams geometry_to_params(const DeviceLayout& layout, const MaterialParams& material,
                                      const SplittingSource& source, const SiteEnergies& site = {}) {
  const auto report = validate_layout(layout);
  if (report.has(ViolationKind::kMinSeparation) || report.has(ViolationKind::kTunnelRange))
    throw DomainError("geometry_to_params: pair separation outside [3.84, 16] Angstrom");
  const std::size_t n = layout.n_qubits();
  auto splitting_at = [&](double s) {
    if (source.kind == SplittingSource::Kind::kExplicit) {
      if (!(source.splitting > 0.0)) throw DomainError("geometry_to_params: explicit splitting must be > 0");
      return source.splitting;
    }
    if (!source.well) throw CalibrationError("geometry_to_params: no calibrated well supplied");
    return source.well->fd_splitting(s);
  };

  QubitParams p(n, 0.5 * splitting_at(layout.separation(0)));
  bool uniform = true;
  std::vector<double> t(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double s = layout.separation(q);
    t[q] = std::abs(s - layout.separation(0)) < 1e-9 ? p.t_tunnel : 0.5 * splitting_at(s);
    uniform = uniform && t[q] == p.t_tunnel;
  }
  if (!uniform) p.t_override = t;

  const double eps = material.eps_surface;
  p.e_os = site.e_os;
  p.eta = site.eta;
  p.u0 = site.u0.value_or(material.charged_db_level - material.neutral_db_level);
  p.w0 = screened_coulomb(layout.separation(0), eps);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& pa = layout.pairs[a];
      const auto& pb = layout.pairs[b];
      const double ll = screened_coulomb(layout.site_distance(pa.left, pb.left), eps);
      const double rr = screened_coulomb(layout.site_distance(pa.right, pb.right), eps);
      const double lr = screened_coulomb(layout.site_distance(pa.left, pb.right), eps);
      const double rl = screened_coulomb(layout.site_distance(pa.right, pb.left), eps);
      p.set_coupling(a, b, 0.5 * (ll + rr), 0.5 * (lr + rl));
      p.z_static[a] += 0.75 * (ll - rr + lr - rl);
      p.z_static[b] += 0.75 * (ll - rr + rl - lr);
    }
  }
  return p;
}

}  // namespace dbq::qubit
