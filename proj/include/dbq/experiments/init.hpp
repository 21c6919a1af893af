#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dbq/dynamics/lindblad.hpp"
#include "dbq/experiments/common.hpp"

namespace dbq::experiments {

/// Ground-state P(0) of T X - (dV/2) Z, i.e. a tilt of magnitude dV towards
/// the left site: (1 + (dV/2) / sqrt((dV/2)^2 + T^2)) / 2.
inline double ideal_init_p0(double tilt, double t_tunnel) {
  const double h = 0.5 * tilt;
  return 0.5 * (1.0 + h / std::sqrt(h * h + t_tunnel * t_tunnel));
}

inline Outcome run_init(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "init").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));

  const auto p = qubit_params(cfg);
  const std::size_t n = p.n_qubits;
  const double tilt = cfg.pulses.init_tilt_ev.value_or(20.0 * p.t_of(0));
  if (!(tilt >= 0.0)) throw ConfigError("pulses.init_tilt_ev", "must be >= 0");
  const double rate = cfg.noise.relaxation_rate_hz;
  if (!(rate > 0.0)) throw ConfigError("noise.relaxation_rate_hz", "initialization needs a relaxation rate > 0");
  const double chunk = cfg.run.init_chunk_fs, cap = cfg.run.init_max_fs;
  if (!(chunk > 0.0) || !(cap >= chunk)) throw ConfigError("run.init_chunk_fs", "need 0 < init_chunk_fs <= init_max_fs");

  // Lowering the left site favours |0>; static offsets are cancelled.
  std::vector<double> dv(n);
  for (std::size_t q = 0; q < n; ++q) dv[q] = -tilt - 2.0 * p.z_static[q];
  const auto channels = dynamics::relaxation_channels(n, rate);
  const auto piece = qubit::PulseSchedule(n).add(chunk, dv);
  dynamics::LindbladOptions opt;
  opt.dt = lindblad_dt(cfg, p, piece, channels);
  opt.sample_times = dynamics::uniform_times(chunk, 11);
  opt.sample_times.erase(opt.sample_times.begin());

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  auto state = dynamics::QuantumState::mixed(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
  std::vector<dynamics::TrajectorySample> samples{{0.0, state.populations1(), state.purity()}};
  dynamics::LindbladDiagnostics diag;
  std::vector<double> prev = state.populations1();
  bool plateau = false;
  while (state.time() < cap - 1e-9 && !plateau) {
    auto res = dynamics::evolve_lindblad(state, p, piece, channels, opt);
    diag.max_trace_error = std::max(diag.max_trace_error, res.diagnostics.max_trace_error);
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, res.diagnostics.min_eigenvalue);
    diag.steps += res.diagnostics.steps;
    samples.insert(samples.end(), res.trajectory.samples.begin(), res.trajectory.samples.end());
    state = res.trajectory.final_state;
    const auto now = state.populations1();
    double change = 0.0;
    for (std::size_t q = 0; q < n; ++q) change = std::max(change, std::abs(now[q] - prev[q]));
    plateau = change < cfg.run.init_plateau_tol;
    prev = now;
  }
  write_trajectory(spec.out_dir / "init_trajectory.csv", n, samples);
  out.outputs.push_back("init_trajectory.csv");

  rep.section("protocol");
  rep.kv("tilt_ev", tilt).kv("relaxation_rate_hz", rate).kv("dt_fs", opt.dt);
  rep.kv("protocol_duration_fs", state.time()).kv("rk4_steps", static_cast<std::uint64_t>(diag.steps));
  rep.kv("plateau_reached", plateau).kv("max_trace_error", diag.max_trace_error).kv("min_eigenvalue", diag.min_eigenvalue);
  rep.section("result");
  for (std::size_t q = 0; q < n; ++q) {
    const double p0 = 1.0 - state.population1(q);
    const double ideal = ideal_init_p0(tilt, p.t_of(q));
    const std::string tag = "q" + std::to_string(q);
    rep.kv("final_p0_" + tag, p0).kv("ideal_p0_" + tag, ideal);
    rep.check("p0_within_1e-3_" + tag, std::abs(p0 - ideal) <= 1e-3, "|" + fmt(p0) + " - " + fmt(ideal) + "|");
  }
  rep.check("plateau_within_cap", plateau, plateau ? "reached" : "partial: time cap hit");
  rep.check("lindblad_trace", diag.max_trace_error <= 1e-9, fmt(diag.max_trace_error));
  rep.check("lindblad_positivity", diag.min_eigenvalue >= -1e-8, fmt(diag.min_eigenvalue));
  write_report(spec.out_dir, "init_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
