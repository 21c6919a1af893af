#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/gates/fidelity.hpp"
#include "dbq/optimize.hpp"
#include "dbq/qubit/params.hpp"
#include "dbq/qubit/pulse_schedule.hpp"
#include "dbq/units.hpp"

namespace dbq::gates {

/// Schedule durations are multiples of this (fs).
inline constexpr double kTimeQuantum = 1e-3;
/// Minimum |dV| / T for tilt-based gates.
inline constexpr double kTiltRegime = 20.0;

inline double quantize(double t) { return std::round(t / kTimeQuantum) * kTimeQuantum; }

struct GateSchedule {
  qubit::PulseSchedule schedule;
  GateTarget target;
  double nominal_duration = 0.0;  // fs, before quantization
  double error_bound = 0.0;       // analytic infidelity bound, 0 when exact
  bool sub_fs = false;            // some segment is shorter than 1 fs
};

namespace detail {

inline bool any_sub_fs(const qubit::PulseSchedule& s) {
  for (const auto& seg : s.segments())
    if (seg.duration < 1.0) return true;
  return false;
}

}  // namespace detail

/// t = theta hbar / (2 T): free tunneling exp(-i T X t / hbar) = Rx(theta).
inline double rx_duration(double theta, double t_tunnel) {
  if (!(theta >= 0.0)) throw DomainError("rx_duration: theta must be >= 0");
  if (!(t_tunnel > 0.0)) throw DomainError("rx_duration: t_tunnel must be > 0");
  return theta * units::kHbar / (2.0 * t_tunnel);
}

inline GateSchedule rx_schedule(double theta, double t_tunnel) {
  const double t = rx_duration(theta, t_tunnel);
  GateSchedule g{qubit::PulseSchedule(1), rx_target(theta), t, 0.0, false};
  if (quantize(t) > 0.0) g.schedule.add(quantize(t), {0.0});
  g.sub_fs = detail::any_sub_fs(g.schedule);
  return g;
}

/// Rz(sign(dV) theta) by a tilt of dV held for theta hbar / |dV|; the
/// always-on tunneling leaves an infidelity of at most (2T/dV)^2.
inline GateSchedule rz_schedule(double theta, double deltav, double t_tunnel) {
  if (!(theta >= 0.0)) throw DomainError("rz_schedule: theta must be >= 0");
  if (!(t_tunnel > 0.0)) throw DomainError("rz_schedule: t_tunnel must be > 0");
  if (!(std::abs(deltav) >= kTiltRegime * t_tunnel)) {
    std::ostringstream msg;
    msg << "rz_schedule: |dV| = " << std::abs(deltav) << " eV is below " << kTiltRegime << " T = "
        << kTiltRegime * t_tunnel << " eV; an exact Rz is unreachable with always-on tunneling";
    throw RegimeError(msg.str());
  }
  const double t = theta * units::kHbar / std::abs(deltav);
  const double sign = deltav > 0.0 ? 1.0 : -1.0;
  GateSchedule g{qubit::PulseSchedule(1), rz_target(sign * theta), t, std::pow(2.0 * t_tunnel / deltav, 2), false};
  if (quantize(t) > 0.0) g.schedule.add(quantize(t), {deltav});
  g.sub_fs = detail::any_sub_fs(g.schedule);
  return g;
}

/// t = phi hbar / (4 |c|): exp(-i c t ZZ / hbar) = exp(-i sign(c) (phi/4) ZZ).
inline double cphase_duration(double phi, double zz_coeff) {
  if (zz_coeff == 0.0) throw DomainError("cphase_duration: zero ZZ coupling");
  if (!(phi >= 0.0)) throw DomainError("cphase_duration: phi must be >= 0");
  return phi * units::kHbar / (4.0 * std::abs(zz_coeff));
}

/// Echoed CPHASE(phi) on two qubits: the tilt +dV for half the time, then
/// -dV, with each qubit's static offset cancelled, so single-qubit Z phases
/// vanish and only the ZZ phase survives. Target is the ZZ form, locally
/// equivalent to CPHASE(phi). Bound: 4 sum_q (2 T_q / (|dV| - 2|c|))^2.
inline GateSchedule cphase_schedule(double phi, const qubit::QubitParams& p, double deltav) {
  if (p.n_qubits != 2) throw StructuralError("cphase_schedule: expected two qubits");
  const double c = p.zz(0, 1);
  const double t = cphase_duration(phi, c);
  const double tmax = std::max(p.t_of(0), p.t_of(1));
  const double tilt = std::abs(deltav);
  if (tilt < kTiltRegime * tmax || tilt < 4.0 * std::abs(c)) {
    std::ostringstream msg;
    msg << "cphase_schedule: |dV| = " << tilt << " eV must be >= " << kTiltRegime << " T = " << kTiltRegime * tmax
        << " eV and >= 4|c| = " << 4.0 * std::abs(c) << " eV";
    throw RegimeError(msg.str());
  }
  double bound = 0.0;
  for (std::size_t q = 0; q < 2; ++q) bound += 4.0 * std::pow(2.0 * p.t_of(q) / (tilt - 2.0 * std::abs(c)), 2);
  GateSchedule g{qubit::PulseSchedule(2), zz_phase_target(phi, c > 0.0 ? 1.0 : -1.0), t, bound, false};
  const double half = quantize(0.5 * t);
  if (half > 0.0) {
    g.schedule.add(half, {tilt - 2.0 * p.z_static[0], tilt - 2.0 * p.z_static[1]});
    g.schedule.add(half, {-tilt - 2.0 * p.z_static[0], -tilt - 2.0 * p.z_static[1]});
  }
  g.sub_fs = detail::any_sub_fs(g.schedule);
  return g;
}

struct DurationOptimum {
  double duration = 0.0;
  double infidelity = 0.0;
  std::size_t evaluations = 0;
  bool multistart = false;
  std::string note;
};

/// Minimizes objective(duration) on [lo, hi] to 1e-4 fs.
template <class F>
DurationOptimum optimize_duration(F&& objective, double lo, double hi, double tol = 1e-4) {
  if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("optimize_duration: bracket must satisfy 0 <= lo < hi");
  const auto m = minimize_scalar(objective, lo, hi, tol);
  return {m.argmin, m.value, m.evaluations, m.multistart, m.note};
}

}  // namespace dbq::gates
