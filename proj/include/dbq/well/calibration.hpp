#pragma once

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "dbq/errors.hpp"
#include "dbq/material.hpp"
#include "dbq/optimize.hpp"
#include "dbq/units.hpp"
#include "dbq/well/bound_states.hpp"
#include "dbq/well/potential.hpp"
#include "dbq/well/wkb.hpp"

namespace dbq::well {

/// Reference splittings (separation in Angstrom, splitting in eV) from cluster
/// calculations on DB pairs; used only as calibration targets.
struct SplittingAnchor {
  double separation;
  double splitting;
};
inline constexpr std::array<SplittingAnchor, 2> kDftAnchors{{{3.84, 0.3077}, {7.72, 0.0887}}};

/// Default single-well level below the plateau for a given material: the
/// charged-DB level measured from the conduction band edge.
inline double default_target_level(const MaterialParams& m) { return m.charged_level_below_cb(); }

/// Inputs of the effective double-well model used for tunneling estimates.
struct WellSettings {
  WellShape shape = WellShape::kSquare;
  double width = 3.0;          // Angstrom
  double m_star = 1.0;         // m*/m_e
  double target_level = 1.4;   // eV below the plateau
  bool fit_width = false;      // adjust width to the DFT anchors after level calibration
  double grid_spacing = 0.02;  // Angstrom
  double margin_decay_lengths = 20.0;

  bool operator==(const WellSettings&) const = default;

  double decay_constant() const { return std::sqrt(target_level / units::kinetic_prefactor(m_star)); }
  /// Distance kept between the outer well edges and the Dirichlet walls.
  double margin() const { return std::max(15.0, margin_decay_lengths / decay_constant()); }
};

inline std::size_t grid_points(double x_min, double x_max, double spacing) {
  return std::max<std::size_t>(500, static_cast<std::size_t>(std::ceil((x_max - x_min) / spacing)) - 1);
}

namespace detail {

inline SingleWellPotential single_well(double depth, double width, WellShape shape, double m_star, double margin) {
  const double half = 0.5 * width + margin;
  return {depth, width, shape, m_star, -half, half};
}

inline double ground_level(const SingleWellPotential& w, double spacing) {
  const auto r = solve_bound_states(w, grid_points(w.x_min, w.x_max, spacing), 1, false);
  return r.empty() ? 0.0 : r.energies[0];
}

}  // namespace detail

/// Depth (eV) for which the isolated well's ground state sits at
/// -target_level, to 1e-6 eV. Searched in [target_level, 10 target_level].
inline double calibrate_well(double target_level, WellShape shape, double width, double m_star,
                             double grid_spacing = 0.02, double margin = -1.0) {
  if (!(target_level > 0.0)) throw DomainError("calibrate_well: target_level must be > 0");
  if (!(width > 0.0) || !(m_star > 0.0)) throw DomainError("calibrate_well: width and m_star must be > 0");
  if (margin <= 0.0) margin = std::max(15.0, 20.0 / std::sqrt(target_level / units::kinetic_prefactor(m_star)));

  auto residual = [&](double depth) {
    return detail::ground_level(detail::single_well(depth, width, shape, m_star, margin), grid_spacing) +
           target_level;
  };
  const double lo = target_level, hi = 10.0 * target_level;
  const double f_lo = residual(lo), f_hi = residual(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0))
    throw CalibrationError("calibrate_well: no depth in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] eV puts the ground state at -" + std::to_string(target_level) +
                           " eV (residuals " + std::to_string(f_lo) + ", " + std::to_string(f_hi) +
                           "); widen the well or lower the target");
  std::uintmax_t iters = 100;
  const auto r = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                   boost::math::tools::eps_tolerance<double>(45), iters);
  const double depth = 0.5 * (r.first + r.second);
  if (std::abs(residual(depth)) > 1e-6)
    throw CalibrationError("calibrate_well: root finder did not reach 1e-6 eV");
  return depth;
}

/// A well model whose depth has been calibrated, ready to be placed at any
/// separation.
struct CalibratedWell {
  WellSettings settings;
  double depth = 0.0;
  double width = 0.0;
  double anchor_log_error = 0.0;  // sum of squared log residuals at the DFT anchors

  DoubleWellPotential at(double separation, double asymmetry = 0.0) const {
    DoubleWellPotential p;
    p.separation = separation;
    p.well_depth = depth;
    p.well_width = width;
    p.asymmetry = asymmetry;
    p.shape = settings.shape;
    p.m_star = settings.m_star;
    fit_domain(p, settings.margin());
    return p;
  }

  std::size_t n_grid(const DoubleWellPotential& p) const {
    return grid_points(p.x_min, p.x_max, settings.grid_spacing);
  }

  /// E1 - E0 of the double well from the finite-difference solver.
  double fd_splitting(double separation) const {
    const auto p = at(separation);
    const auto r = solve_bound_states(p, n_grid(p), 2, false);
    if (r.energies.size() < 2) throw RegimeError("double well has fewer than two bound states");
    return r.energies[1] - r.energies[0];
  }

  WkbResult wkb(double separation) const {
    const auto p = at(separation);
    return wkb_details(p, n_grid(p));
  }
};

namespace detail {

inline double anchor_error(const CalibratedWell& cw) {
  double e = 0.0;
  for (const auto& a : kDftAnchors) {
    const double l = std::log(cw.fd_splitting(a.separation) / a.splitting);
    e += l * l;
  }
  return e;
}

inline CalibratedWell level_calibrated(const WellSettings& s, double width) {
  CalibratedWell cw;
  cw.settings = s;
  cw.width = width;
  cw.depth = calibrate_well(s.target_level, s.shape, width, s.m_star, s.grid_spacing, s.margin());
  return cw;
}

}  // namespace detail

/// Level calibration, then (if requested) a one-parameter width adjustment
/// minimizing the squared log error against the two DFT splittings. The
/// width search keeps the wells disjoint at the smallest anchor separation.
inline CalibratedWell calibrate(const WellSettings& s) {
  if (!s.fit_width) {
    auto cw = detail::level_calibrated(s, s.width);
    cw.anchor_log_error = detail::anchor_error(cw);
    return cw;
  }
  auto objective = [&](double width) {
    try {
      return detail::anchor_error(detail::level_calibrated(s, width));
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const double upper = 0.95 * kDftAnchors[0].separation;
  const auto best = minimize_scalar(objective, 0.25 * s.width, std::min(upper, 2.0 * s.width), 1e-3, 13);
  auto cw = detail::level_calibrated(s, best.argmin);
  cw.anchor_log_error = detail::anchor_error(cw);
  return cw;
}

}  // namespace dbq::well
