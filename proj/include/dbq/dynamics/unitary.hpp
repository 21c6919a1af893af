#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "dbq/dynamics/state.hpp"
#include "dbq/errors.hpp"
#include "dbq/qubit/hq.hpp"
#include "dbq/qubit/pulse_schedule.hpp"
#include "dbq/units.hpp"

namespace dbq::dynamics {

struct TrajectorySample {
  double time = 0.0;
  std::vector<double> p1;
  double purity = 1.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  QuantumState final_state = QuantumState::basis(1, 0);
};

/// Eigendecomposition of a constant real-symmetric Hamiltonian.
struct SpectralPropagator {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  explicit SpectralPropagator(const Eigen::MatrixXd& h) {
    if (!h.allFinite()) throw DomainError("evolve: Hamiltonian has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    energies = es.eigenvalues();
    vectors = es.eigenvectors();
  }

  Eigen::VectorXcd phases(double dt) const {
    Eigen::VectorXcd ph(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k) ph(k) = std::polar(1.0, -energies(k) * dt / units::kHbar);
    return ph;
  }

  /// exp(-i H dt / hbar)
  Eigen::MatrixXcd unitary(double dt) const {
    const Eigen::MatrixXcd v = vectors.cast<cd>();
    return v * phases(dt).asDiagonal() * v.adjoint();
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double dt) const {
    const Eigen::MatrixXcd v = vectors.cast<cd>();
    Eigen::VectorXcd c = v.adjoint() * psi;
    return v * phases(dt).cwiseProduct(c);
  }
};

/// Product of the segment propagators, latest segment leftmost.
inline Eigen::MatrixXcd schedule_unitary(const qubit::QubitParams& p, const qubit::PulseSchedule& schedule) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << p.n_qubits);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& seg : schedule.segments())
    u = SpectralPropagator(qubit::build_hq(p, seg.deltav)).unitary(seg.duration) * u;
  return u;
}

/// Evenly spaced times 0, total/(n-1), ..., total.
inline std::vector<double> uniform_times(double total, std::size_t n) {
  if (n < 2) return {total};
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = total * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

inline void check_sample_times(const std::vector<double>& times, double total) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || times[i] > total * (1.0 + 1e-12) + 1e-12)
      throw DomainError("evolve: sample time outside the schedule");
    if (i > 0 && times[i] < times[i - 1]) throw DomainError("evolve: sample times must be ascending");
  }
}

/// Exact piecewise-constant evolution of a pure state; samples populations
/// at `times` (fs, relative to the start of the schedule).
inline Trajectory evolve_unitary(const QuantumState& initial, const qubit::QubitParams& p,
                                 const qubit::PulseSchedule& schedule, const std::vector<double>& times = {}) {
  if (p.n_qubits > qubit::kMaxQubits) throw CapacityError("evolve_unitary: at most 12 qubits are supported");
  if (initial.n_qubits() != p.n_qubits) throw StructuralError("evolve_unitary: state and parameters disagree on N");
  if (schedule.n_qubits() != p.n_qubits) throw StructuralError("evolve_unitary: schedule and parameters disagree on N");
  check_sample_times(times, schedule.total_duration());
  Eigen::VectorXcd psi = initial.vector();
  const double t0 = initial.time();
  Trajectory traj;
  std::size_t next = 0;
  double seg_start = 0.0;
  const auto& segs = schedule.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const SpectralPropagator prop(qubit::build_hq(p, segs[k].deltav));
    const double seg_end = seg_start + segs[k].duration;
    const bool last = k + 1 == segs.size();
    while (next < times.size() && (times[next] < seg_end || last)) {
      const auto s = QuantumState::pure(prop.apply(psi, times[next] - seg_start), t0 + times[next]);
      traj.samples.push_back({s.time(), s.populations1(), 1.0});
      ++next;
    }
    psi = prop.apply(psi, segs[k].duration);
    seg_start = seg_end;
  }
  traj.final_state = QuantumState::pure(psi, t0 + schedule.total_duration());
  return traj;
}

}  // namespace dbq::dynamics
