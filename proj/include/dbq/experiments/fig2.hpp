#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dbq/experiments/common.hpp"
#include "dbq/noise/phonon.hpp"
#include "dbq/well/sweep.hpp"

namespace dbq::experiments {

inline constexpr double kAnchorRate1 = 9.3e14;  // Hz, 307.7 meV
inline constexpr double kAnchorRate2 = 2.7e14;  // Hz, 88.7 meV

struct Fig2Data {
  well::CalibratedWell well;
  std::vector<well::SweepRow> rows;
  std::vector<double> phonon;  // Hz, one per row
};

inline Fig2Data fig2_sweep(const io::Config& cfg) {
  if (!(cfg.run.sweep_step > 0.0) || cfg.run.sweep_step > 0.5)
    throw ConfigError("run.sweep_step", "must be in (0, 0.5] Angstrom");
  if (!(cfg.run.sweep_max > cfg.run.sweep_min)) throw ConfigError("run.sweep_max", "must exceed run.sweep_min");
  Fig2Data d{well::calibrate(cfg.well), {}, {}};
  d.rows = well::sweep_separation(d.well, well::separation_grid(cfg.run.sweep_min, cfg.run.sweep_max, cfg.run.sweep_step));
  const auto model = cfg.phonon();
  for (const auto& r : d.rows) d.phonon.push_back(noise::phonon_rate(model, r.s));
  return d;
}

inline double decades(const std::vector<double>& v) {
  double lo = INFINITY, hi = 0.0;
  for (double x : v)
    if (std::isfinite(x) && x > 0.0) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  return hi > 0.0 ? std::log10(hi / lo) : 0.0;
}

/// R^2 of log10(rate) against s over [lo, hi].
inline LinearFit log_rate_fit(const std::vector<well::SweepRow>& rows, bool wkb, double lo, double hi) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    const double rate = wkb ? r.rate_wkb : r.rate_fd;
    if (r.s >= lo - 1e-9 && r.s <= hi + 1e-9 && std::isfinite(rate) && rate > 0.0) {
      x.push_back(r.s);
      y.push_back(std::log10(rate));
    }
  }
  return linear_fit(x, y);
}

inline Outcome run_fig2(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "fig2").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));

  Fig2Data d;
  try {
    d = fig2_sweep(cfg);
  } catch (const CalibrationError& e) {
    rep.check("calibration", false, e.what());
    write_report(spec.out_dir, "fig2_report.txt", rep, out);
    return out;
  }

  {
    io::CsvWriter csv(spec.out_dir / "fig2.csv", {"s_angstrom", "splitting_fd_ev", "splitting_wkb_ev", "rate_fd_hz",
                                                  "rate_wkb_hz", "status", "phonon_rate_hz"});
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      const auto& r = d.rows[i];
      std::string status = r.status;
      std::replace(status.begin(), status.end(), ',', ';');
      csv.row({fmt(r.s), fmt(r.splitting_fd), fmt(r.splitting_wkb), fmt(r.rate_fd), fmt(r.rate_wkb), status,
               fmt(d.phonon[i])});
    }
    out.outputs.push_back("fig2.csv");
  }

  rep.section("well");
  rep.kv("shape", well::to_string(d.well.settings.shape))
      .kv("width_angstrom", d.well.width)
      .kv("depth_ev", d.well.depth)
      .kv("m_star", d.well.settings.m_star)
      .kv("target_level_ev", d.well.settings.target_level)
      .kv("anchor_log_error", d.well.anchor_log_error);

  rep.section("anchors");
  const double a1 = well::splitting_to_rate(0.3077), a2 = well::splitting_to_rate(0.0887);
  rep.kv("rate_at_307.7mev_hz", a1).kv("reference_rate_1_hz", kAnchorRate1);
  rep.kv("rate_at_88.7mev_hz", a2).kv("reference_rate_2_hz", kAnchorRate2);
  rep.check("anchor_rate_307.7mev", a1 >= 9.2e14 && a1 <= 9.5e14, fmt(a1) + " Hz in [9.2e14, 9.5e14]");
  rep.check("anchor_rate_88.7mev", a2 >= 2.65e14 && a2 <= 2.75e14, fmt(a2) + " Hz in [2.65e14, 2.75e14]");

  const auto w772 = d.well.wkb(7.72);
  const double wkb772 = well::splitting_to_rate(w772.splitting);
  const double fd772 = well::splitting_to_rate(d.well.fd_splitting(7.72));
  rep.section("calibrated_7.72");
  rep.kv("rate_fd_hz", fd772).kv("rate_wkb_hz", wkb772).kv("wkb_attempt_source", well::to_string(w772.attempt_source));
  rep.check("wkb_rate_7.72_within_factor_3", wkb772 >= kAnchorRate2 / 3.0 && wkb772 <= 3.0 * kAnchorRate2,
            fmt(wkb772) + " Hz vs 2.7e14 Hz");

  rep.section("shape");
  const auto fit_wkb = log_rate_fit(d.rows, true, 6.0, 16.0);
  const auto fit_fd = log_rate_fit(d.rows, false, 6.0, 16.0);
  std::vector<double> fd_rates, wkb_rates;
  for (const auto& r : d.rows) {
    fd_rates.push_back(r.rate_fd);
    wkb_rates.push_back(r.rate_wkb);
  }
  const double dec_fd = decades(fd_rates), dec_wkb = decades(wkb_rates), dec_ph = decades(d.phonon);
  rep.kv("r2_log_rate_wkb_6_16", fit_wkb.r2).kv("r2_log_rate_fd_6_16", fit_fd.r2);
  rep.kv("decay_per_angstrom_wkb", -fit_wkb.slope * std::log(10.0));
  rep.kv("tunneling_decades_fd", dec_fd).kv("tunneling_decades_wkb", dec_wkb).kv("phonon_decades", dec_ph);
  rep.check("log_rate_linear_r2", fit_wkb.r2 >= 0.98, "R^2 = " + fmt(fit_wkb.r2) + " >= 0.98");
  rep.check("tunneling_spans_3_decades", std::min(dec_fd, dec_wkb) >= 3.0,
            "fd " + fmt(dec_fd) + ", wkb " + fmt(dec_wkb) + " decades");
  rep.check("phonon_within_one_decade", dec_ph < 1.0, fmt(dec_ph) + " decades");

  rep.section("phonon");
  const auto model = cfg.phonon();
  const double g768 = noise::phonon_rate(model, 7.68);
  const double ratio = noise::phonon_rate(model, 15.36) / noise::phonon_rate(model, 3.84);
  rep.kv("phonon_energy_ev", model.phonon_energy).kv("rate_7.68_hz", g768).kv("lifetime_7.68_ns", 1e9 / g768);
  rep.kv("ratio_15.36_over_3.84", ratio);
  rep.check("phonon_lifetime_1_100_ns", g768 > 0.0 && 1e9 / g768 >= 1.0 && 1e9 / g768 <= 100.0,
            fmt(1e9 / g768) + " ns");
  rep.check("phonon_ratio_below_10", ratio < 10.0, fmt(ratio));

  rep.section("crossing");
  std::string crossing = "none";
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    const double a = std::log(d.rows[i - 1].rate_wkb / d.phonon[i - 1]);
    const double b = std::log(d.rows[i].rate_wkb / d.phonon[i]);
    if (std::isfinite(a) && std::isfinite(b) && a * b <= 0.0 && a != b) {
      crossing = fmt(d.rows[i - 1].s + (d.rows[i].s - d.rows[i - 1].s) * a / (a - b));
      break;
    }
  }
  rep.kv("s_cross_in_sweep_angstrom", crossing);
  if (crossing == "none") {
    // log10 rate = intercept + slope s meets the phonon rate at the sweep end
    const double target = std::log10(d.phonon.back());
    rep.kv("s_cross_extrapolated_angstrom", (target - fit_wkb.intercept) / fit_wkb.slope);
  }

  write_report(spec.out_dir, "fig2_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
