#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace dbq {

/// Silicon / dangling-bond material constants. Energies in eV, lengths in
/// Angstrom, SI for the bulk elastic constants.
struct MaterialParams {
  double band_gap = 1.1;
  double neutral_db_level = 0.35;  // above the valence band edge
  double charged_db_level = 0.85;  // above the valence band edge
  double onsite_shift = 0.5;
  double lattice_displacement = 0.3;  // recorded only
  double effective_mass_ratio = 0.26;
  double eps_surface = 6.35;
  double density = 2329.0;           // kg/m^3
  double sound_speed_l = 8433.0;     // m/s
  double deformation_potential = 8.8;

  bool operator==(const MaterialParams&) const = default;

  /// Binding of the charged DB level below the conduction band edge.
  double charged_level_below_cb() const { return band_gap - charged_db_level; }

  /// Names of violated invariants, empty when the parameter set is usable.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    const std::pair<const char*, double> positive[] = {
        {"band_gap", band_gap},
        {"neutral_db_level", neutral_db_level},
        {"charged_db_level", charged_db_level},
        {"onsite_shift", onsite_shift},
        {"lattice_displacement", lattice_displacement},
        {"effective_mass_ratio", effective_mass_ratio},
        {"eps_surface", eps_surface},
        {"density", density},
        {"sound_speed_l", sound_speed_l},
        {"deformation_potential", deformation_potential}};
    for (const auto& [name, value] : positive) {
      if (!(value > 0.0) || !std::isfinite(value)) out.push_back(std::string(name) + " must be > 0");
    }
    if (!(band_gap > charged_db_level)) out.emplace_back("band_gap must exceed charged_db_level");
    if (eps_surface < 1.0) out.emplace_back("eps_surface must be >= 1");
    return out;
  }
};

}  // namespace dbq
