#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dbq/dynamics/lindblad.hpp"
#include "dbq/dynamics/unitary.hpp"
#include "dbq/experiments/common.hpp"
#include "dbq/noise/drift.hpp"

namespace dbq::experiments {

/// Tilt schedule carrying the lattice drift on qubit 0, piecewise constant
/// over slices of `slice` fs evaluated at slice midpoints.
inline qubit::PulseSchedule drift_schedule(std::size_t n_qubits, double duration, const noise::DriftModel* drift,
                                           double slice) {
  qubit::PulseSchedule s(n_qubits);
  if (!drift) {
    s.add(duration, std::vector<double>(n_qubits, 0.0));
    return s;
  }
  if (!(slice > 0.0)) throw ConfigError("noise.drift_slice_fs", "must be > 0");
  const auto n = static_cast<std::size_t>(std::ceil(duration / slice - 1e-9));
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = static_cast<double>(k) * slice;
    const double len = std::min(slice, duration - t0);
    std::vector<double> dv(n_qubits, 0.0);
    dv[0] = noise::drift_bias(*drift, t0 + 0.5 * len);
    s.add(len, dv);
  }
  return s;
}

struct OscillationFit {
  double frequency_hz = 0.0;          // population oscillation frequency
  double decay_time_fs = 0.0;         // 1/e time of the swing envelope; inf when undamped
  double oscillations_before_decay = 0.0;
  std::vector<double> window_times;   // fs, window centres
  std::vector<double> window_swing;   // max - min of P1 in each window
  std::vector<double> window_max;     // max P1 in each window
};

namespace detail {

/// Upward crossings of the midline (max + min)/2, linearly interpolated.
inline std::vector<double> upward_crossings(const std::vector<double>& t, const std::vector<double>& y) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double mid = 0.5 * (*lo + *hi);
  std::vector<double> out;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i - 1] < mid && y[i] >= mid) out.push_back(t[i - 1] + (t[i] - t[i - 1]) * (mid - y[i - 1]) / (y[i] - y[i - 1]));
  return out;
}

}  // namespace detail

/// Frequency from midline crossings of the dense block, envelope from the
/// per-window swing of P1 (log-linear fit).
inline OscillationFit fit_oscillation(const std::vector<dynamics::TrajectorySample>& samples, std::size_t dense_count,
                                      std::size_t window_size) {
  OscillationFit fit;
  std::vector<double> t, y;
  for (std::size_t i = 0; i < dense_count && i < samples.size(); ++i) {
    t.push_back(samples[i].time);
    y.push_back(samples[i].p1[0]);
  }
  const auto cross = detail::upward_crossings(t, y);
  if (cross.size() >= 2)
    fit.frequency_hz = units::per_fs_to_hz(static_cast<double>(cross.size() - 1) / (cross.back() - cross.front()));

  auto add_window = [&](std::size_t begin, std::size_t end) {
    double mn = 1.0, mx = 0.0, tc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      mn = std::min(mn, samples[i].p1[0]);
      mx = std::max(mx, samples[i].p1[0]);
      tc += samples[i].time;
    }
    fit.window_times.push_back(tc / static_cast<double>(end - begin));
    fit.window_swing.push_back(mx - mn);
    fit.window_max.push_back(mx);
  };
  for (std::size_t b = 0; b + window_size <= dense_count; b += window_size) add_window(b, b + window_size);
  for (std::size_t b = dense_count; b + window_size <= samples.size(); b += window_size) add_window(b, b + window_size);

  std::vector<double> wt, wl;
  for (std::size_t i = 0; i < fit.window_times.size(); ++i)
    if (fit.window_swing[i] > 1e-6) {
      wt.push_back(fit.window_times[i]);
      wl.push_back(std::log(fit.window_swing[i]));
    }
  fit.decay_time_fs = std::numeric_limits<double>::infinity();
  if (wt.size() >= 2) {
    const auto lf = linear_fit(wt, wl);
    if (lf.slope < 0.0 && -lf.slope * (wt.back() - wt.front()) > 1e-6) fit.decay_time_fs = -1.0 / lf.slope;
  }
  fit.oscillations_before_decay = fit.decay_time_fs * units::hz_to_per_fs(fit.frequency_hz);
  return fit;
}

inline Outcome run_rabi(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "rabi").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));

  const auto p = first_qubit(qubit_params(cfg));
  const double t = p.t_tunnel;
  const double period = units::kPlanck / (2.0 * t);  // fs, population period
  const double duration = cfg.pulses.rabi_duration_fs;
  const std::size_t spp = std::max<std::uint64_t>(8, cfg.run.samples_per_period);
  const double dense_end = std::min(duration, static_cast<double>(cfg.run.rabi_dense_periods) * period);

  std::vector<double> times;
  const auto n_dense = static_cast<std::size_t>(std::floor(dense_end / period * static_cast<double>(spp)));
  for (std::size_t i = 0; i <= n_dense; ++i) times.push_back(static_cast<double>(i) * period / static_cast<double>(spp));
  const std::size_t dense_count = times.size();
  const std::size_t window_size = 2 * spp;
  const std::size_t n_windows = cfg.run.rabi_windows;
  const double last_start = duration - 2.0 * period;
  const double dense_last = times.back();
  if (n_windows > 0 && last_start > dense_last + period) {
    for (std::size_t w = 1; w <= n_windows; ++w) {
      const double start = dense_last + (last_start - dense_last) * static_cast<double>(w) / static_cast<double>(n_windows);
      for (std::size_t i = 0; i < window_size; ++i)
        times.push_back(start + static_cast<double>(i) * period / static_cast<double>(spp));
    }
  }
  times.erase(std::remove_if(times.begin(), times.end(), [&](double x) { return x > duration; }), times.end());

  const auto drift = cfg.drift();
  const bool drift_on = cfg.noise.drift_enabled;
  const auto schedule = drift_schedule(1, duration, drift_on ? &drift : nullptr, cfg.noise.drift_slice_fs);
  const double gamma = cfg.noise.dephasing_rate_hz;

  dynamics::Trajectory traj;
  rep.section("run");
  rep.kv("t_tunnel_ev", t).kv("splitting_ev", 2.0 * t).kv("duration_fs", duration);
  rep.kv("dephasing_rate_hz", gamma).kv("drift_enabled", drift_on);
  if (gamma > 0.0) {
    const auto channels = dynamics::dephasing_channels(1, gamma);
    dynamics::LindbladOptions opt;
    opt.dt = lindblad_dt(cfg, p, schedule, channels);
    opt.sample_times = times;
    auto res = dynamics::evolve_lindblad(dynamics::QuantumState::basis(1, 0).as_mixed(), p, schedule, channels, opt);
    rep.kv("dt_fs", opt.dt).kv("max_trace_error", res.diagnostics.max_trace_error);
    rep.kv("min_eigenvalue", res.diagnostics.min_eigenvalue);
    rep.check("lindblad_trace", res.diagnostics.max_trace_error <= 1e-9, fmt(res.diagnostics.max_trace_error));
    rep.check("lindblad_positivity", res.diagnostics.min_eigenvalue >= -1e-8, fmt(res.diagnostics.min_eigenvalue));
    traj = std::move(res.trajectory);
  } else {
    traj = dynamics::evolve_unitary(dynamics::QuantumState::basis(1, 0), p, schedule, times);
  }
  write_trajectory(spec.out_dir / "rabi_trajectory.csv", 1, traj.samples);
  out.outputs.push_back("rabi_trajectory.csv");

  const auto fit = fit_oscillation(traj.samples, dense_count, window_size);
  const double expected = units::per_fs_to_hz(2.0 * t / units::kPlanck);
  rep.section("fit");
  rep.kv("frequency_hz", fit.frequency_hz).kv("expected_frequency_hz", expected);
  rep.kv("envelope_decay_time_fs", fit.decay_time_fs).kv("oscillations_before_1_over_e", fit.oscillations_before_decay);
  if (drift_on) {
    rep.kv("drift_eta0_ev", drift.eta0).kv("drift_tau_fs", drift.tau_relax);
    rep.kv("drift_decoherence_estimate", noise::drift_decoherence_estimate(drift, t));
    rep.kv("early_max_p1", fit.window_max.front()).kv("late_max_p1", fit.window_max.back());
  }

  if (!drift_on) {
    const double rel = std::abs(fit.frequency_hz / expected - 1.0);
    rep.check("frequency_matches_splitting", rel <= 5e-3, "relative error " + fmt(rel));
  } else {
    bool monotone = true;
    for (std::size_t i = 1; i < fit.window_max.size(); ++i)
      monotone = monotone && fit.window_max[i] >= fit.window_max[i - 1] - 1e-3;
    rep.check("early_amplitude_below_one", fit.window_max.front() < 0.99, fmt(fit.window_max.front()));
    rep.check("amplitude_recovers_monotonically", monotone && fit.window_max.back() > fit.window_max.front(),
              "max P1 " + fmt(fit.window_max.front()) + " -> " + fmt(fit.window_max.back()));
  }
  if (gamma > 0.0)
    rep.check("oscillations_before_decay_1e4", fit.oscillations_before_decay >= 1e4, fmt(fit.oscillations_before_decay));

  write_report(spec.out_dir, "rabi_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
