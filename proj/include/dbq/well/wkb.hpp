#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "dbq/errors.hpp"
#include "dbq/units.hpp"
#include "dbq/well/bound_states.hpp"
#include "dbq/well/potential.hpp"

namespace dbq::well {

/// Tunneling rate in Hz for a two-level splitting in eV: 2 delta / hbar.
inline double splitting_to_rate(double delta_ev) {
  if (delta_ev < 0.0) throw DomainError("splitting_to_rate: splitting must be non-negative");
  return units::per_fs_to_hz(2.0 * delta_ev / units::kHbar);
}

/// Dimensionless action integral of sqrt(2 m* (V - E)) / hbar over the parts of
/// [a, b] where V > E.
template <Potential1D P>
double wkb_action(const P& pot, double energy, double a, double b) {
  if (!(b >= a)) throw DomainError("wkb_action: need a <= b");
  if (a == b) return 0.0;
  const double c = units::kinetic_prefactor(pot.m_star);
  auto integrand = [&](double x) {
    const double dv = pot(x) - energy;
    return dv > 0.0 ? std::sqrt(dv / c) : 0.0;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-12);
}

enum class AttemptSource { kLevelSpacing, kHarmonicCurvature, kZeroPointEnergy };

inline const char* to_string(AttemptSource s) {
  switch (s) {
    case AttemptSource::kLevelSpacing: return "level-spacing";
    case AttemptSource::kHarmonicCurvature: return "harmonic-curvature";
    case AttemptSource::kZeroPointEnergy: return "zero-point";
  }
  return "?";
}

struct WkbResult {
  double splitting = 0.0;    // eV
  double action = 0.0;       // S, dimensionless
  double hbar_omega0 = 0.0;  // eV
  double level = 0.0;        // single-well ground energy E0, eV
  double turning_point = 0.0;
  AttemptSource attempt_source = AttemptSource::kLevelSpacing;
};

/// Semiclassical splitting (hbar omega0 / pi) exp(-S) of a symmetric double
/// well. E0 and omega0 come from the isolated single well solved on the same
/// grid spacing: omega0 from its level spacing when it has two bound states,
/// otherwise from the curvature of its floor, and for a flat (square) floor
/// from the zero-point energy hbar omega0 = 2 (E0 - V_min).
inline WkbResult wkb_details(const DoubleWellPotential& pot, std::size_t n_grid) {
  pot.validate();
  if (pot.asymmetry != 0.0) throw DomainError("wkb_splitting: potential must be symmetric (asymmetry = 0)");
  const SingleWellPotential single = pot.isolated_well();
  const auto states = solve_bound_states(single, n_grid, 2, false);
  if (states.empty()) throw RegimeError("wkb_splitting: isolated well has no bound state");

  WkbResult r;
  r.level = states.energies[0];
  const double barrier_top = pot(0.0);
  if (r.level >= barrier_top)
    throw RegimeError("wkb_splitting: single-well level " + std::to_string(r.level) +
                      " eV is not below the barrier top " + std::to_string(barrier_top) + " eV (no tunneling regime)");

  auto g = [&](double x) { return pot(x) - r.level; };
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::bisect(g, 0.0, pot.right_center(),
                                                  boost::math::tools::eps_tolerance<double>(50), iters);
  r.turning_point = 0.5 * (bracket.first + bracket.second);
  r.action = 2.0 * wkb_action(pot, r.level, 0.0, r.turning_point);

  if (states.energies.size() >= 2) {
    r.hbar_omega0 = states.energies[1] - states.energies[0];
    r.attempt_source = AttemptSource::kLevelSpacing;
  } else if (single.bottom_curvature() > 0.0) {
    r.hbar_omega0 = std::sqrt(single.bottom_curvature() * 2.0 * units::kinetic_prefactor(pot.m_star));
    r.attempt_source = AttemptSource::kHarmonicCurvature;
  } else {
    r.hbar_omega0 = 2.0 * (r.level - single.minimum());
    r.attempt_source = AttemptSource::kZeroPointEnergy;
  }
  r.splitting = r.hbar_omega0 / units::kPi * std::exp(-r.action);
  return r;
}

inline double wkb_splitting(const DoubleWellPotential& pot, std::size_t n_grid) {
  return wkb_details(pot, n_grid).splitting;
}

}  // namespace dbq::well
