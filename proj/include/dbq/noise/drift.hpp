#pragma once

#include <cmath>

#include "dbq/errors.hpp"
#include "dbq/units.hpp"

namespace dbq::noise {

/// Relaxing lattice distortion on the initialized site.
struct DriftModel {
  double eta0 = 0.5;         // eV
  double tau_relax = 1.0e6;  // fs

  void validate() const {
    if (!(eta0 >= 0.0) || !std::isfinite(eta0)) throw DomainError("DriftModel: eta0 must be >= 0");
    if (!(tau_relax > 0.0)) throw DomainError("DriftModel: tau_relax must be > 0");
  }
};

/// eta(t) = eta0 exp(-t / tau)
inline double drift_bias(const DriftModel& m, double t) {
  m.validate();
  if (!(t >= 0.0)) throw DomainError("drift_bias: t must be >= 0");
  return m.eta0 * std::exp(-t / m.tau_relax);
}

/// (hbar / tau) / (2 T): relaxation rate over oscillation rate.
inline double drift_decoherence_estimate(const DriftModel& m, double t_tunnel) {
  m.validate();
  if (!(t_tunnel > 0.0)) throw DomainError("drift_decoherence_estimate: t_tunnel must be > 0");
  return (units::kHbar / m.tau_relax) / (2.0 * t_tunnel);
}

}  // namespace dbq::noise
