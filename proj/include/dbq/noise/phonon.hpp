#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/material.hpp"
#include "dbq/units.hpp"

namespace dbq::noise {

/// LA-phonon deformation-potential relaxation of a two-site charge state.
struct PhononModel {
  double deformation_potential = 8.8;  // eV
  double density = 2329.0;             // kg/m^3
  double sound_speed_l = 8433.0;       // m/s
  double envelope_radius = 2.0;        // Angstrom
  double phonon_energy = 0.0015;       // eV
  double debye_energy = 0.055;         // eV

  static PhononModel from_material(const MaterialParams& m) {
    PhononModel p;
    p.deformation_potential = m.deformation_potential;
    p.density = m.density;
    p.sound_speed_l = m.sound_speed_l;
    return p;
  }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    const std::pair<const char*, double> positive[] = {{"deformation_potential", deformation_potential},
                                                       {"density", density},
                                                       {"sound_speed_l", sound_speed_l},
                                                       {"envelope_radius", envelope_radius},
                                                       {"phonon_energy", phonon_energy},
                                                       {"debye_energy", debye_energy}};
    for (const auto& [name, v] : positive)
      if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be > 0");
    if (phonon_energy > debye_energy) out.emplace_back("phonon_energy must not exceed debye_energy");
    return out;
  }

  void validate() const {
    const auto v = violations();
    if (!v.empty()) throw DomainError("PhononModel: " + v.front());
  }
};

/// 1 - sin(x)/x, with a series below x = 1e-2 to avoid cancellation.
inline double one_minus_sinc(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return 1.0 - std::sin(x) / x;
}

/// Gamma = Xi^2 w^3 / (4 pi^2 rho hbar c^5) [1 - sinc(q s)] exp(-q^2 a^2 / 2),
/// w = E/hbar, q = w/c. Returns Hz.
inline double phonon_rate(const PhononModel& m, double separation) {
  m.validate();
  if (!(separation >= 0.0) || !std::isfinite(separation))
    throw DomainError("phonon_rate: separation must be finite and >= 0");
  const double xi = m.deformation_potential * units::kElectronVoltJ;
  const double omega = m.phonon_energy * units::kElectronVoltJ / units::kHbarSI;
  const double q = omega / m.sound_speed_l;
  const double s = separation * units::kAngstromM;
  const double a = m.envelope_radius * units::kAngstromM;
  const double prefactor = xi * xi * std::pow(omega, 3) /
                           (4.0 * units::kPi * units::kPi * m.density * units::kHbarSI * std::pow(m.sound_speed_l, 5));
  return prefactor * one_minus_sinc(q * s) * std::exp(-0.5 * q * q * a * a);
}

}  // namespace dbq::noise
