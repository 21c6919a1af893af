#pragma once

// Internal unit system: energies in eV, lengths in Angstrom, times in fs.
// Rates in Hz only appear at I/O boundaries.

namespace dbq::units {

inline constexpr double kPi = 3.14159265358979323846;

/// Reduced Planck constant [eV fs].
inline constexpr double kHbar = 0.6582119569;
/// Planck constant [eV fs].
inline constexpr double kPlanck = 2.0 * kPi * kHbar;
/// e^2 / (4 pi eps0) [eV Angstrom].
inline constexpr double kCoulomb = 14.39964;
/// hbar^2 / (2 m_e) [eV Angstrom^2].
inline constexpr double kHbar2Over2Me = 3.80998;

// SI values used where a formula is naturally stated in SI.
inline constexpr double kElectronVoltJ = 1.602176634e-19;
inline constexpr double kHbarSI = 1.054571817e-34;  // J s
inline constexpr double kAngstromM = 1e-10;

inline constexpr double kFsPerSecond = 1e15;

constexpr double hz_to_per_fs(double hz) { return hz / kFsPerSecond; }
constexpr double per_fs_to_hz(double per_fs) { return per_fs * kFsPerSecond; }
constexpr double ns_to_fs(double ns) { return ns * 1e6; }

/// hbar^2 / (2 m*) for a mass given in units of the free electron mass.
constexpr double kinetic_prefactor(double m_star) { return kHbar2Over2Me / m_star; }

}  // namespace dbq::units
