#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dbq/dynamics/lindblad.hpp"
#include "dbq/dynamics/unitary.hpp"
#include "dbq/experiments/common.hpp"
#include "dbq/gates/concurrence.hpp"
#include "dbq/gates/fidelity.hpp"
#include "dbq/gates/synthesis.hpp"
#include "dbq/qubit/hq.hpp"

namespace dbq::experiments {

/// Channel of the Lindblad evolution over `schedule`, for channel_fidelity.
inline gates::Channel lindblad_channel(const qubit::QubitParams& p, const qubit::PulseSchedule& schedule,
                                       const std::vector<dynamics::LindbladChannel>& channels, double dt) {
  return [=](const Eigen::MatrixXcd& e) {
    dynamics::LindbladOptions opt;
    opt.dt = dt;
    auto r = dynamics::evolve_lindblad(dynamics::QuantumState::raw_mixed(e, 0.0), p, schedule, channels, opt);
    return Eigen::MatrixXcd(r.trajectory.final_state.density());
  };
}

inline std::string gate_report_text(const gates::GateSchedule& g, const gates::FidelityReport& closed,
                                    const gates::FidelityReport* noisy, const std::string& noise) {
  Report r;
  r.kv("target", g.target.label).kv("nominal_duration_fs", g.nominal_duration);
  r.kv("scheduled_duration_fs", g.schedule.total_duration()).kv("time_quantum_fs", gates::kTimeQuantum);
  r.kv("sub_fs_segments", g.sub_fs);
  r.section("segments");
  for (std::size_t k = 0; k < g.schedule.segments().size(); ++k) {
    const auto& s = g.schedule.segments()[k];
    std::string dv;
    for (std::size_t q = 0; q < s.deltav.size(); ++q) dv += (q ? " " : "") + fmt(s.deltav[q]);
    r.kv("segment_" + std::to_string(k), "duration_fs=" + fmt(s.duration) + " deltav_ev=" + dv);
  }
  r.section("fidelity");
  r.kv("process_fidelity", closed.process_fidelity).kv("average_gate_fidelity", closed.average_gate_fidelity);
  r.kv("error_bound", g.error_bound);
  r.section("noise");
  r.kv("model", noise);
  if (noisy) r.kv("process_fidelity", noisy->process_fidelity).kv("average_gate_fidelity", noisy->average_gate_fidelity);
  return r.str();
}

inline Outcome run_entangle(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "entangle").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));

  auto p = qubit_params(cfg);
  if (p.n_qubits != 2) throw ConfigError("layout.pairs", "entangle needs exactly two pairs");
  const double c = p.zz(0, 1);
  if (c == 0.0) throw DomainError("entangle: zero ZZ coupling (w_minus = 0)");
  const double phi = cfg.pulses.cphase_phi;
  const double tilt = cfg.pulses.cphase_tilt_ev.value_or(
      std::max(gates::kTiltRegime * std::max(p.t_of(0), p.t_of(1)), 4.0 * std::abs(c)));
  const auto g = gates::cphase_schedule(phi, p, tilt);

  // closed system, always-on tunneling
  const Eigen::MatrixXcd u = dynamics::schedule_unitary(p, g.schedule);
  const auto closed = gates::gate_fidelity(u, g.target);

  // T = 0, no tilts: only the ZZ term acts
  PauliXZ ideal_h(2);
  ideal_h.zz(0, 1) = c;
  const Eigen::MatrixXcd u_ideal = dynamics::SpectralPropagator(ideal_h.matrix()).unitary(g.schedule.total_duration());
  const auto [plus, minus] = qubit::conjugate_basis_states();
  const Eigen::VectorXcd pp = dynamics::kron({plus, plus});
  const double conc_ideal = gates::concurrence(Eigen::VectorXcd(u_ideal * pp));
  const double conc_real = gates::concurrence(Eigen::VectorXcd(u * pp));

  // same schedule with Z dephasing on both qubits
  const double gamma = cfg.noise.dephasing_rate_hz;
  const auto channels = dynamics::dephasing_channels(2, gamma);
  const double dt = lindblad_dt(cfg, p, g.schedule, channels);
  const auto noisy = gates::channel_fidelity(lindblad_channel(p, g.schedule, channels, dt), g.target);

  auto traj = dynamics::evolve_unitary(dynamics::QuantumState::pure(pp), p, g.schedule,
                                       dynamics::uniform_times(g.schedule.total_duration(), 201));
  write_trajectory(spec.out_dir / "entangle_trajectory.csv", 2, traj.samples);
  out.outputs.push_back("entangle_trajectory.csv");
  std::ofstream(spec.out_dir / "gate_report.txt", std::ios::binary)
      << gate_report_text(g, closed, &noisy, "Z dephasing " + fmt(gamma) + " Hz per qubit");
  out.outputs.push_back("gate_report.txt");

  auto other = p;
  other.zz_convention =
      p.zz_convention == qubit::ZzConvention::kProjected ? qubit::ZzConvention::kFull : qubit::ZzConvention::kProjected;
  const double d_proj = gates::cphase_duration(phi, p.zz_convention == qubit::ZzConvention::kProjected ? c : other.zz(0, 1));
  const double d_full = gates::cphase_duration(phi, p.zz_convention == qubit::ZzConvention::kFull ? c : other.zz(0, 1));

  rep.section("coupling");
  rep.kv("w_same_ev", p.w_same(0, 1)).kv("w_cross_ev", p.w_cross(0, 1)).kv("w_minus_ev", p.w_minus(0, 1));
  rep.kv("zz_convention", qubit::to_string(p.zz_convention)).kv("zz_coeff_ev", c);
  rep.kv("duration_projected_fs", d_proj).kv("duration_full_fs", d_full).kv("duration_ratio_full_over_projected", d_full / d_proj);
  rep.section("gate");
  rep.kv("phi", phi).kv("tilt_ev", tilt).kv("duration_fs", g.schedule.total_duration()).kv("sub_fs_segments", g.sub_fs);
  rep.kv("f_avg_closed", closed.average_gate_fidelity).kv("error_bound", g.error_bound);
  rep.kv("f_avg_dephased", noisy.average_gate_fidelity).kv("dephasing_rate_hz", gamma).kv("dt_fs", dt);
  rep.kv("concurrence_ideal", conc_ideal).kv("concurrence_always_on_t", conc_real);

  if (std::abs(phi - units::kPi) < 1e-12)
    rep.check("ideal_concurrence_1", std::abs(conc_ideal - 1.0) <= 1e-6, fmt(conc_ideal));
  rep.check("closed_within_bound", 1.0 - closed.average_gate_fidelity <= g.error_bound,
            fmt(1.0 - closed.average_gate_fidelity) + " <= " + fmt(g.error_bound));
  if (gamma > 0.0) {
    const double loss = closed.average_gate_fidelity - noisy.average_gate_fidelity;
    const double estimate = 2.0 * units::hz_to_per_fs(gamma) * g.schedule.total_duration();
    rep.kv("dephasing_loss", loss).kv("dephasing_estimate_2_gamma_t", estimate);
    rep.check("dephasing_loss_within_factor_3", loss >= estimate / 3.0 && loss <= 3.0 * estimate,
              fmt(loss) + " vs " + fmt(estimate));
  }
  write_report(spec.out_dir, "entangle_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
