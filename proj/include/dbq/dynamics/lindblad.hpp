#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "dbq/dynamics/state.hpp"
#include "dbq/dynamics/unitary.hpp"
#include "dbq/errors.hpp"
#include "dbq/qubit/hq.hpp"
#include "dbq/qubit/pulse_schedule.hpp"
#include "dbq/units.hpp"

namespace dbq::dynamics {

enum class ChannelKind {
  kDephasing,   // Z on one qubit, computational basis
  kRelaxation,  // lowering operator in the qubit's instantaneous local eigenbasis
  kCustom,      // fixed full-register operator
};

struct LindbladChannel {
  ChannelKind kind = ChannelKind::kDephasing;
  std::size_t qubit = 0;
  double rate_hz = 0.0;
  Eigen::MatrixXcd op;  // kCustom only

  static LindbladChannel dephasing(std::size_t q, double rate_hz) { return {ChannelKind::kDephasing, q, rate_hz, {}}; }
  static LindbladChannel relaxation(std::size_t q, double rate_hz) { return {ChannelKind::kRelaxation, q, rate_hz, {}}; }
  static LindbladChannel custom(Eigen::MatrixXcd op, double rate_hz) {
    return {ChannelKind::kCustom, 0, rate_hz, std::move(op)};
  }
  double rate_per_fs() const { return units::hz_to_per_fs(rate_hz); }
};

inline std::vector<LindbladChannel> dephasing_channels(std::size_t n_qubits, double rate_hz) {
  std::vector<LindbladChannel> out;
  for (std::size_t q = 0; q < n_qubits; ++q) out.push_back(LindbladChannel::dephasing(q, rate_hz));
  return out;
}

inline std::vector<LindbladChannel> relaxation_channels(std::size_t n_qubits, double rate_hz) {
  std::vector<LindbladChannel> out;
  for (std::size_t q = 0; q < n_qubits; ++q) out.push_back(LindbladChannel::relaxation(q, rate_hz));
  return out;
}

/// |g><e| of the single-qubit part T X + (dV/2 + z) Z of qubit q.
inline Eigen::Matrix2cd local_lowering(const qubit::QubitParams& p, std::size_t q, double deltav) {
  Eigen::Matrix2d h;
  const double zc = 0.5 * deltav + p.z_static[q];
  h << zc, p.t_of(q), p.t_of(q), -zc;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  const Eigen::Vector2cd g = es.eigenvectors().col(0).cast<cd>();
  const Eigen::Vector2cd e = es.eigenvectors().col(1).cast<cd>();
  return g * e.adjoint();
}

/// Full-register jump operator for `ch` at the given tilts.
inline Eigen::MatrixXcd channel_operator(const LindbladChannel& ch, const qubit::QubitParams& p,
                                         const std::vector<double>& deltav) {
  const std::size_t dim = std::size_t{1} << p.n_qubits;
  switch (ch.kind) {
    case ChannelKind::kDephasing: {
      if (ch.qubit >= p.n_qubits) throw DomainError("LindbladChannel: qubit index out of range");
      Eigen::Matrix2cd z;
      z << 1.0, 0.0, 0.0, -1.0;
      return embed(z, ch.qubit, p.n_qubits);
    }
    case ChannelKind::kRelaxation:
      if (ch.qubit >= p.n_qubits) throw DomainError("LindbladChannel: qubit index out of range");
      return embed(local_lowering(p, ch.qubit, deltav.at(ch.qubit)), ch.qubit, p.n_qubits);
    case ChannelKind::kCustom:
      if (ch.op.rows() != static_cast<Eigen::Index>(dim) || ch.op.cols() != static_cast<Eigen::Index>(dim))
        throw StructuralError("LindbladChannel: custom operator has the wrong dimension");
      return ch.op;
  }
  throw StructuralError("LindbladChannel: unknown kind");
}

/// Additional tilt (eV per qubit) as a function of absolute time in fs.
using BiasDrift = std::function<std::vector<double>(double)>;

struct LindbladOptions {
  double dt = 0.01;                   // fs, upper bound; segments use duration / ceil(duration / dt)
  std::vector<double> sample_times;   // relative to the schedule start
  BiasDrift drift;                    // optional
  static constexpr double kStepBudget = 0.05;
};

struct LindbladDiagnostics {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
  std::size_t steps = 0;
};

struct LindbladResult {
  Trajectory trajectory;
  LindbladDiagnostics diagnostics;
};

/// Half the eigenvalue range of H; invariant under identity shifts.
inline double spectral_spread(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * (es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff());
}

namespace detail {

inline std::vector<double> add_bias(std::vector<double> dv, const BiasDrift& drift, double t) {
  if (!drift) return dv;
  const auto extra = drift(t);
  if (extra.size() != dv.size()) throw StructuralError("evolve_lindblad: drift returned the wrong number of tilts");
  for (std::size_t q = 0; q < dv.size(); ++q) dv[q] += extra[q];
  return dv;
}

/// Effective non-Hermitian Hamiltonian and scaled jump operators.
template <int D>
struct Generator {
  using Mat = Eigen::Matrix<cd, D, D>;
  Mat h_eff;
  std::vector<Mat> jumps;

  Generator(const qubit::QubitParams& p, const std::vector<double>& dv, const std::vector<LindbladChannel>& channels) {
    h_eff = qubit::build_hq(p, dv).cast<cd>();
    const cd half_i_hbar(0.0, 0.5 * units::kHbar);
    for (const auto& ch : channels) {
      const double g = ch.rate_per_fs();
      if (g == 0.0) continue;
      const Mat l = channel_operator(ch, p, dv);
      h_eff -= half_i_hbar * g * (l.adjoint() * l);
      jumps.push_back(std::sqrt(g) * l);
    }
  }

  Mat rhs(const Mat& rho) const {
    const cd minus_i_over_hbar(0.0, -1.0 / units::kHbar);
    Mat out = minus_i_over_hbar * (h_eff * rho - rho * h_eff.adjoint());
    for (const auto& l : jumps) out.noalias() += l * rho * l.adjoint();
    return out;
  }

  /// Column-major vectorization: vec(A rho B) = (B^T kron A) vec(rho).
  Eigen::MatrixXcd superoperator() const {
    const Eigen::Index d = h_eff.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const cd minus_i_over_hbar(0.0, -1.0 / units::kHbar);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d * d, d * d);
    auto kron_add = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cd scale) {
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          if (a(i, j) != cd(0.0)) s.block(i * d, j * d, d, d) += scale * a(i, j) * b;
    };
    const Eigen::MatrixXcd h = h_eff;
    kron_add(id, h, minus_i_over_hbar);
    kron_add(h.conjugate(), id, -minus_i_over_hbar);
    for (const auto& l : jumps) {
      const Eigen::MatrixXcd lm = l;
      kron_add(lm.conjugate(), lm, 1.0);
    }
    return s;
  }
};

struct Recorder {
  Trajectory traj;
  LindbladDiagnostics diag;

  void record(const Eigen::MatrixXcd& rho, double t) {
    const auto s = QuantumState::raw_mixed(rho, t);
    diag.max_trace_error = std::max(diag.max_trace_error, std::abs(rho.trace() - cd(1.0)));
    diag.max_hermiticity_error = std::max(diag.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, min_eigenvalue(rho));
    traj.samples.push_back({t, s.populations1(), s.purity()});
  }
};

inline std::size_t step_count(double duration, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(duration / dt - 1e-9)));
}

/// (1 + e)^k - 1, kept in offset form so the small part never gets rounded
/// against the identity.
inline Eigen::MatrixXcd offset_power(Eigen::MatrixXcd e, std::size_t k) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(e.rows(), e.cols());
  while (k) {
    if (k & 1U) out = (out + e + out * e).eval();
    k >>= 1U;
    if (k) e = (2.0 * e + e * e).eval();
  }
  return out;
}

/// Sample step indices inside one segment, as (index, time) pairs.
inline std::vector<std::pair<std::size_t, double>> segment_samples(const std::vector<double>& times, std::size_t& next,
                                                                   double seg_start, double seg_end, std::size_t n,
                                                                   double h, bool last) {
  std::vector<std::pair<std::size_t, double>> out;
  while (next < times.size() && (times[next] < seg_end || last)) {
    const auto k = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround((times[next] - seg_start) / h)));
    out.emplace_back(k, times[next]);
    ++next;
  }
  return out;
}

/// RK4 applied one step at a time; the generator is rebuilt at t, t+h/2, t+h
/// when a drift is present.
template <int D>
void run_direct(Eigen::Matrix<cd, D, D>& rho, const qubit::QubitParams& p, const qubit::PulseSchedule& schedule,
                const std::vector<LindbladChannel>& channels, const LindbladOptions& opt, double t0, Recorder& rec) {
  using Mat = Eigen::Matrix<cd, D, D>;
  std::size_t next = 0;
  double seg_start = 0.0;
  const auto& segs = schedule.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::size_t n = step_count(segs[k].duration, opt.dt);
    const double h = segs[k].duration / static_cast<double>(n);
    const double seg_end = seg_start + segs[k].duration;
    auto samples = segment_samples(opt.sample_times, next, seg_start, seg_end, n, h, k + 1 == segs.size());
    std::size_t si = 0;
    auto gen_at = [&](double t_abs) { return Generator<D>(p, add_bias(segs[k].deltav, opt.drift, t_abs), channels); };
    std::optional<Generator<D>> fixed;
    if (!opt.drift) fixed.emplace(p, segs[k].deltav, channels);
    for (std::size_t step = 0;; ++step) {
      while (si < samples.size() && samples[si].first == step) {
        rec.record(Eigen::MatrixXcd(rho), t0 + seg_start + static_cast<double>(step) * h);
        ++si;
      }
      if (step == n) break;
      const double t = t0 + seg_start + static_cast<double>(step) * h;
      Mat k1, k2, k3, k4;
      if (fixed) {
        k1 = fixed->rhs(rho);
        k2 = fixed->rhs(rho + 0.5 * h * k1);
        k3 = fixed->rhs(rho + 0.5 * h * k2);
        k4 = fixed->rhs(rho + h * k3);
      } else {
        const auto g0 = gen_at(t), gm = gen_at(t + 0.5 * h), g1 = gen_at(t + h);
        k1 = g0.rhs(rho);
        k2 = gm.rhs(rho + 0.5 * h * k1);
        k3 = gm.rhs(rho + 0.5 * h * k2);
        k4 = g1.rhs(rho + h * k3);
      }
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++rec.diag.steps;
    }
    seg_start = seg_end;
  }
}

/// Same RK4 map, applied through its d^2 x d^2 matrix
/// 1 + x + x^2/2 + x^3/6 + x^4/24 (x = h L) raised to the step count.
/// Powers are taken on the offset from the identity.
inline void run_superoperator(Eigen::MatrixXcd& rho, const qubit::QubitParams& p,
                              const qubit::PulseSchedule& schedule, const std::vector<LindbladChannel>& channels,
                              const LindbladOptions& opt, double t0, Recorder& rec) {
  const Eigen::Index d = rho.rows();
  std::size_t next = 0;
  double seg_start = 0.0;
  const auto& segs = schedule.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::size_t n = step_count(segs[k].duration, opt.dt);
    const double h = segs[k].duration / static_cast<double>(n);
    const double seg_end = seg_start + segs[k].duration;
    const auto samples = segment_samples(opt.sample_times, next, seg_start, seg_end, n, h, k + 1 == segs.size());
    const Eigen::MatrixXcd x = h * Generator<Eigen::Dynamic>(p, segs[k].deltav, channels).superoperator();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d * d, d * d);
    const Eigen::MatrixXcd step = x * (id + x * (0.5 * id + x * (id / 6.0 + x / 24.0)));
    Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(rho.data(), d * d);
    std::size_t at = 0;
    auto advance = [&](std::size_t to) {
      if (to > at) v += offset_power(step, to - at) * v;
      at = to;
    };
    for (const auto& [idx, t] : samples) {
      advance(idx);
      rec.record(Eigen::Map<Eigen::MatrixXcd>(v.data(), d, d), t0 + seg_start + static_cast<double>(idx) * h);
    }
    advance(n);
    rec.diag.steps += n;
    rho = Eigen::Map<Eigen::MatrixXcd>(v.data(), d, d);
    seg_start = seg_end;
  }
}

}  // namespace detail

/// Throws StepSizeError when dt * (spread(H)/hbar + sum of rates) > 0.05 on
/// any segment (the drift is checked at both segment ends).
inline void check_step_contract(const qubit::QubitParams& p, const qubit::PulseSchedule& schedule,
                                const std::vector<LindbladChannel>& channels, const LindbladOptions& opt, double t0) {
  if (!(opt.dt > 0.0) || !std::isfinite(opt.dt)) throw DomainError("evolve_lindblad: dt must be finite and > 0");
  double rates = 0.0;
  for (const auto& ch : channels) {
    if (!(ch.rate_hz >= 0.0) || !std::isfinite(ch.rate_hz)) throw DomainError("LindbladChannel: rate must be >= 0");
    rates += ch.rate_per_fs();
  }
  double worst = 0.0;
  double seg_start = t0;
  for (const auto& seg : schedule.segments()) {
    for (double t : {seg_start, seg_start + seg.duration})
      worst = std::max(worst, spectral_spread(qubit::build_hq(p, detail::add_bias(seg.deltav, opt.drift, t))));
    seg_start += seg.duration;
  }
  const double budget = worst / units::kHbar + rates;
  if (opt.dt * budget > LindbladOptions::kStepBudget) {
    const double suggested = LindbladOptions::kStepBudget / budget;
    std::ostringstream msg;
    msg << "evolve_lindblad: dt = " << opt.dt << " fs violates the step contract; use dt <= " << suggested << " fs";
    throw StepSizeError(msg.str(), suggested);
  }
}

/// Fixed-step RK4 integration of the Lindblad equation over `schedule`.
/// Trace drift is reported in the diagnostics and never corrected.
inline LindbladResult evolve_lindblad(const QuantumState& initial, const qubit::QubitParams& p,
                                      const qubit::PulseSchedule& schedule,
                                      const std::vector<LindbladChannel>& channels, const LindbladOptions& opt) {
  if (initial.n_qubits() != p.n_qubits) throw StructuralError("evolve_lindblad: state and parameters disagree on N");
  if (schedule.n_qubits() != p.n_qubits) throw StructuralError("evolve_lindblad: schedule and parameters disagree on N");
  check_sample_times(opt.sample_times, schedule.total_duration());
  const double t0 = initial.time();
  check_step_contract(p, schedule, channels, opt, t0);

  detail::Recorder rec;
  Eigen::MatrixXcd rho = initial.to_density();
  const std::size_t dim = std::size_t{1} << p.n_qubits;
  if (!opt.drift && dim <= 4) {
    detail::run_superoperator(rho, p, schedule, channels, opt, t0, rec);
  } else if (dim == 2) {
    Eigen::Matrix2cd r = rho;
    detail::run_direct<2>(r, p, schedule, channels, opt, t0, rec);
    rho = r;
  } else if (dim == 4) {
    Eigen::Matrix4cd r = rho;
    detail::run_direct<4>(r, p, schedule, channels, opt, t0, rec);
    rho = r;
  } else {
    detail::run_direct<Eigen::Dynamic>(rho, p, schedule, channels, opt, t0, rec);
  }
  rec.diag.max_trace_error = std::max(rec.diag.max_trace_error, std::abs(rho.trace() - cd(1.0)));
  LindbladResult out{std::move(rec.traj), rec.diag};
  out.trajectory.final_state = QuantumState::raw_mixed(std::move(rho), t0 + schedule.total_duration());
  return out;
}

}  // namespace dbq::dynamics
