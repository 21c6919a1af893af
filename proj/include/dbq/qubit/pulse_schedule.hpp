#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dbq/errors.hpp"

namespace dbq::qubit {

/// Constant-tilt interval: `deltav[q]` (eV) is applied to qubit q for
/// `duration` fs.
struct Segment {
  double duration = 0.0;
  std::vector<double> deltav;
};

/// Piecewise-constant tilt schedule. Segment k covers [t_k, t_k + duration_k).
class PulseSchedule {
 public:
  PulseSchedule() = default;
  explicit PulseSchedule(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  PulseSchedule& add(double duration, std::vector<double> deltav) {
    if (!(duration > 0.0) || !std::isfinite(duration))
      throw DomainError("PulseSchedule: segment duration must be finite and > 0");
    if (n_qubits_ == 0) n_qubits_ = deltav.size();
    if (deltav.size() != n_qubits_) throw StructuralError("PulseSchedule: tilt vector has the wrong length");
    for (double v : deltav)
      if (!std::isfinite(v)) throw DomainError("PulseSchedule: non-finite tilt");
    segments_.push_back({duration, std::move(deltav)});
    total_ += duration;
    return *this;
  }

  PulseSchedule& append(const PulseSchedule& other) {
    for (const auto& s : other.segments_) add(s.duration, s.deltav);
    return *this;
  }

  /// Uniform tilt on every qubit.
  static PulseSchedule constant(std::size_t n_qubits, double duration, double deltav = 0.0) {
    PulseSchedule s(n_qubits);
    s.add(duration, std::vector<double>(n_qubits, deltav));
    return s;
  }

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t n_qubits() const { return n_qubits_; }
  double total_duration() const { return total_; }
  bool empty() const { return segments_.empty(); }

  /// Index of the segment active at time t; the final instant maps to the
  /// last segment.
  std::size_t segment_at(double t) const {
    if (segments_.empty()) throw StructuralError("PulseSchedule: empty schedule");
    if (t < 0.0 || t > total_) throw DomainError("PulseSchedule: time outside the schedule");
    double start = 0.0;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      start += segments_[k].duration;
      if (t < start) return k;
    }
    return segments_.size() - 1;
  }

  const std::vector<double>& at(double t) const { return segments_[segment_at(t)].deltav; }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Segment> segments_;
  double total_ = 0.0;
};

}  // namespace dbq::qubit
