#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dbq/dynamics/lindblad.hpp"
#include "dbq/dynamics/measure.hpp"
#include "dbq/errors.hpp"
#include "dbq/io/config.hpp"
#include "dbq/io/csv.hpp"
#include "dbq/qubit/params.hpp"
#include "dbq/well/calibration.hpp"

namespace dbq::experiments {

enum class Scenario { kFig2, kRabi, kInit, kReadout, kEntangle, kHubbardCheck };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::kFig2: return "fig2";
    case Scenario::kRabi: return "rabi";
    case Scenario::kInit: return "init";
    case Scenario::kReadout: return "readout";
    case Scenario::kEntangle: return "entangle";
    case Scenario::kHubbardCheck: return "hubbard-check";
  }
  return "?";
}

struct ExperimentSpec {
  Scenario scenario = Scenario::kFig2;
  io::Config config;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  std::uint64_t shots = 1000000;
};

/// Plain `key: value` report with `[section]` headers and pass/fail checks.
class Report {
 public:
  Report& section(const std::string& name) {
    text_ << "[" << name << "]\n";
    return *this;
  }
  Report& kv(const std::string& key, const std::string& value) {
    text_ << key << ": " << value << "\n";
    return *this;
  }
  Report& kv(const std::string& key, double value) { return kv(key, io::format_double(value)); }
  Report& kv(const std::string& key, std::uint64_t value) { return kv(key, std::to_string(value)); }
  Report& kv(const std::string& key, bool value) { return kv(key, std::string(value ? "true" : "false")); }
  Report& kv(const std::string& key, const char* value) { return kv(key, std::string(value)); }

  bool check(const std::string& name, bool passed, const std::string& detail) {
    checks_.push_back({name, passed, detail});
    all_passed_ = all_passed_ && passed;
    return passed;
  }

  bool all_passed() const { return all_passed_; }

  std::string str() const {
    std::ostringstream out;
    out << text_.str();
    if (!checks_.empty()) {
      out << "[checks]\n";
      for (const auto& c : checks_) out << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
      out << "overall: " << (all_passed_ ? "pass" : "FAIL") << "\n";
    }
    return out.str();
  }

 private:
  struct Check {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::ostringstream text_;
  std::vector<Check> checks_;
  bool all_passed_ = true;
};

struct Outcome {
  Report report;
  std::vector<std::string> outputs;  // file names relative to out_dir
  bool passed() const { return report.all_passed(); }
};

inline void write_report(const std::filesystem::path& dir, const std::string& name, const Report& r, Outcome& out) {
  std::ofstream(dir / name, std::ios::binary) << r.str();
  out.outputs.push_back(name);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = a + b x.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear_fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

inline std::string fmt(double v) { return io::format_double(v); }

/// QubitParams for the configured layout and splitting source.
inline qubit::QubitParams qubit_params(const io::Config& cfg) {
  qubit::SplittingSource src;
  std::optional<well::CalibratedWell> cw;
  if (cfg.qubit.splitting_source == "explicit") {
    src.kind = qubit::SplittingSource::Kind::kExplicit;
    src.splitting = cfg.qubit.splitting_ev;
  } else if (cfg.qubit.splitting_source == "calibrated_well") {
    cw = well::calibrate(cfg.well);
    src.kind = qubit::SplittingSource::Kind::kCalibratedWell;
    src.well = &*cw;
  } else {
    throw ConfigError("qubit.splitting_source", "expected explicit or calibrated_well");
  }
  qubit::SiteEnergies site{cfg.qubit.e_os, cfg.qubit.eta, cfg.qubit.u0};
  auto p = qubit::geometry_to_params(cfg.layout, cfg.material, src, site);
  try {
    p.zz_convention = qubit::parse_zz_convention(cfg.qubit.zz_convention);
  } catch (const DomainError& e) {
    throw ConfigError("qubit.zz_convention", e.what());
  }
  return p;
}

/// Single-qubit parameters of pair 0.
inline qubit::QubitParams first_qubit(const qubit::QubitParams& full) {
  qubit::QubitParams p(1, full.t_of(0));
  p.e_os = full.e_os;
  p.eta = full.eta;
  p.u0 = full.u0;
  p.w0 = full.w0;
  p.zz_convention = full.zz_convention;
  return p;
}

/// Configured dt, or half the step-contract limit of the worst segment.
inline double lindblad_dt(const io::Config& cfg, const qubit::QubitParams& p, const qubit::PulseSchedule& s,
                          const std::vector<dynamics::LindbladChannel>& channels) {
  if (cfg.run.dt_fs) return *cfg.run.dt_fs;
  double spread = 0.0, rates = 0.0;
  for (const auto& seg : s.segments()) spread = std::max(spread, dynamics::spectral_spread(qubit::build_hq(p, seg.deltav)));
  for (const auto& c : channels) rates += c.rate_per_fs();
  return 0.5 * dynamics::LindbladOptions::kStepBudget / (spread / units::kHbar + rates);
}

inline std::vector<std::string> trajectory_header(std::size_t n_qubits) {
  std::vector<std::string> h{"time_fs"};
  for (std::size_t q = 0; q < n_qubits; ++q) h.push_back("p1_q" + std::to_string(q));
  h.push_back("purity");
  return h;
}

inline void write_trajectory(const std::filesystem::path& path, std::size_t n_qubits,
                             const std::vector<dynamics::TrajectorySample>& samples) {
  io::CsvWriter csv(path, trajectory_header(n_qubits));
  for (const auto& s : samples) {
    std::vector<double> row{s.time};
    row.insert(row.end(), s.p1.begin(), s.p1.end());
    row.push_back(s.purity);
    csv.row(row);
  }
}

}  // namespace dbq::experiments
