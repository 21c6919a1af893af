// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dbq/dynamics/lindblad.hpp"
#include "dbq/dynamics/unitary.hpp"
#include "dbq/experiments/run.hpp"
#include "dbq/gates/fidelity.hpp"
#include "dbq/gates/synthesis.hpp"
#include "dbq/units.hpp"
#include "dbq/well/bound_states.hpp"
#include "dbq/well/potential.hpp"
#include "dbq/well/wkb.hpp"

using namespace dbq;
namespace fs = std::filesystem;
using units::kHbar;
using units::kPi;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [x]");
  }
};

std::string f(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rand_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * dynamics::uniform01(rng); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

double report_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  return std::nan("");
}

experiments::ExperimentSpec scenario_spec(experiments::Scenario s, const std::string& dir, std::uint64_t seed = 1) {
  experiments::ExperimentSpec spec;
  spec.scenario = s;
  spec.out_dir = fs::temp_directory_path() / ("dbq_acceptance_" + dir);
  fs::remove_all(spec.out_dir);
  spec.seed = seed;
  spec.shots = 1000000;
  return spec;
}

void rate_anchors(Verdict& v) {
  const double r1 = well::splitting_to_rate(0.3077), r2 = well::splitting_to_rate(0.0887);
  v.require(r1 >= 9.2e14 && r1 <= 9.5e14, "rate(0.3077 eV) = " + f(r1) + " Hz in [9.2e14, 9.5e14]");
  v.require(r2 >= 2.65e14 && r2 <= 2.75e14, "rate(0.0887 eV) = " + f(r2) + " Hz in [2.65e14, 2.75e14]");
}

void fig2_shape(Verdict& v) {
  const io::Config cfg;
  const auto d = experiments::fig2_sweep(cfg);
  const double w = well::splitting_to_rate(d.well.wkb(7.72).splitting);
  v.require(w >= 2.7e14 / 3.0 && w <= 3.0 * 2.7e14, "WKB rate(7.72) = " + f(w) + " Hz within x3 of 2.7e14");
  const double r2 = experiments::log_rate_fit(d.rows, true, 6.0, 16.0).r2;
  v.require(r2 >= 0.98, "R^2 log rate [6,16] = " + f(r2) + " >= 0.98");
  std::vector<double> fd, wkb;
  for (const auto& r : d.rows) {
    fd.push_back(r.rate_fd);
    wkb.push_back(r.rate_wkb);
  }
  const double dec = std::min(experiments::decades(fd), experiments::decades(wkb));
  v.require(dec >= 3.0, "tunneling decades = " + f(dec) + " >= 3");
  const double ph = experiments::decades(d.phonon);
  v.require(ph < 1.0, "phonon decades = " + f(ph) + " < 1");
}

void phonon_timescale(Verdict& v) {
  const io::Config cfg;
  const double g = noise::phonon_rate(cfg.phonon(), 7.68);
  const double ns = 1e9 / g;
  v.require(ns >= 1.0 && ns <= 100.0, "1/Gamma(7.68) = " + f(ns) + " ns in [1, 100] (phonon_energy " +
                                          f(cfg.noise.phonon_energy) + " eV)");
}

void hubbard_oracle(Verdict& v) {
  std::mt19937_64 rng(2024);
  std::size_t row = 0;
  for (std::size_t pairs : {1U, 2U})
    for (bool asym : {false, true}) {
      if (pairs == 1 && asym) continue;
      const auto s = experiments::hubbard_batch(pairs, 100, rng, asym, nullptr, row);
      const double worst = std::max({s.x, s.z, s.zz, s.identity});
      v.require(worst <= 1e-10, std::to_string(pairs) + (asym ? " asym" : "") + " pair(s) x100: max dev " + f(worst) +
                                    " eV <= 1e-10");
    }
}

void two_level(Verdict& v) {
  using dynamics::QuantumState;
  using qubit::PulseSchedule;
  const double t = 0.05;
  qubit::QubitParams p(1, t);
  const auto rabi =
      dynamics::evolve_unitary(QuantumState::basis(1, 0), p, PulseSchedule::constant(1, kPi * kHbar / (2.0 * t)));
  const double p1 = rabi.final_state.population1(0);
  v.require(std::abs(p1 - 1.0) <= 1e-9, "P1(pi hbar/2T) = 1 - " + f(1.0 - p1));

  const double dv = 0.2, omega = std::sqrt(t * t + 0.25 * dv * dv);
  const double peak = kPi * kHbar / (2.0 * omega);
  const auto det = dynamics::evolve_unitary(QuantumState::basis(1, 0), p, PulseSchedule::constant(1, 4.0 * peak, dv),
                                            dynamics::uniform_times(4.0 * peak, 401));
  double best = 0.0;
  for (const auto& s : det.samples) best = std::max(best, s.p1[0]);
  const double want = t * t / (omega * omega);
  v.require(std::abs(best - want) <= 1e-6, "detuned max " + f(best) + " vs " + f(want));

  qubit::QubitParams idle(1, 1e-30);
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const double gamma = 1e12, tf = 800.0;
  dynamics::LindbladOptions opt;
  opt.dt = 0.5;
  opt.sample_times = dynamics::uniform_times(tf, 9);
  const auto deph = dynamics::evolve_lindblad(QuantumState::pure(plus), idle, PulseSchedule::constant(1, tf),
                                              dynamics::dephasing_channels(1, gamma), opt);
  const double c = std::abs(deph.trajectory.final_state.density()(0, 1));
  const double ratio = c / (0.5 * std::exp(-2.0 * gamma * 1e-15 * tf));
  v.require(std::abs(ratio - 1.0) <= 0.01, "dephasing coherence / exp(-2 gamma t) = " + f(ratio));

  qubit::QubitParams q(1, t);
  dynamics::LindbladOptions o2;
  o2.dt = 0.05;
  o2.sample_times = dynamics::uniform_times(5000.0, 101);
  const auto relax = dynamics::evolve_lindblad(QuantumState::basis(1, 0), q, PulseSchedule::constant(1, 5000.0, -0.4),
                                               dynamics::relaxation_channels(1, 1e12), o2);
  const double trace = std::max(deph.diagnostics.max_trace_error, relax.diagnostics.max_trace_error);
  const double eig = std::min(deph.diagnostics.min_eigenvalue, relax.diagnostics.min_eigenvalue);
  v.require(trace <= 1e-9, "max trace error " + f(trace));
  v.require(eig >= -1e-8, "min eigenvalue " + f(eig));
}

void coherence_budget(Verdict& v) {
  auto spec = scenario_spec(experiments::Scenario::kRabi, "rabi");
  experiments::Outcome out;
  experiments::run_experiment(spec, &out);
  const auto text = out.report.str();
  const double n = report_value(text, "oscillations_before_1_over_e");
  v.require(n >= 1e4, "oscillations before 1/e = " + f(n) + " >= 1e4 (gamma " +
                          f(spec.config.noise.dephasing_rate_hz) + " Hz, splitting " +
                          f(spec.config.qubit.splitting_ev) + " eV)");
  v.require(out.passed(), "rabi scenario checks pass");
}

void gates_criterion(Verdict& v) {
  const double t = 0.04435;
  const auto x = gates::rx_schedule(kPi, t);
  const double fx =
      gates::gate_fidelity(dynamics::schedule_unitary(qubit::QubitParams(1, t), x.schedule), gates::x_target())
          .average_gate_fidelity;
  v.require(fx >= 1.0 - 1e-6, "X F_avg = 1 - " + f(1.0 - fx));

  std::mt19937_64 rng(7);
  int rz_ok = 0;
  for (int k = 0; k < 50; ++k) {
    const double tt = rand_in(rng, 0.005, 0.06);
    const double dv = (dynamics::uniform01(rng) < 0.5 ? -1.0 : 1.0) * rand_in(rng, 20.0 * tt, 80.0 * tt);
    const auto g = gates::rz_schedule(rand_in(rng, 0.1, 2.0 * kPi), dv, tt);
    const auto u = dynamics::schedule_unitary(qubit::QubitParams(1, tt), g.schedule);
    rz_ok += 1.0 - gates::gate_fidelity(u, g.target).average_gate_fidelity <= g.error_bound;
  }
  v.require(rz_ok == 50, "Rz within bound " + std::to_string(rz_ok) + "/50");

  int cp_ok = 0;
  for (int k = 0; k < 50; ++k) {
    qubit::QubitParams p(2);
    p.t_override = {rand_in(rng, 0.005, 0.05), rand_in(rng, 0.005, 0.05)};
    p.t_tunnel = p.t_override[0];
    const double same = rand_in(rng, 0.05, 0.3);
    p.set_coupling(0, 1, same, same - rand_in(rng, -0.05, 0.05));
    p.z_static = {rand_in(rng, -0.02, 0.02), rand_in(rng, -0.02, 0.02)};
    const double need =
        std::max(20.0 * std::max(p.t_override[0], p.t_override[1]), 4.0 * std::abs(p.zz(0, 1)));
    const auto g = gates::cphase_schedule(rand_in(rng, 0.2, kPi), p, rand_in(rng, need, 3.0 * need));
    const auto u = dynamics::schedule_unitary(p, g.schedule);
    cp_ok += 1.0 - gates::gate_fidelity(u, g.target).average_gate_fidelity <= g.error_bound;
  }
  v.require(cp_ok == 50, "CPHASE within bound " + std::to_string(cp_ok) + "/50");

  qubit::QubitParams p(1, t);
  const auto opt = gates::optimize_duration(
      [&](double d) {
        if (d <= 0.0) return 1.0;
        const auto u = dynamics::schedule_unitary(p, qubit::PulseSchedule::constant(1, d));
        return 1.0 - gates::gate_fidelity(u, gates::x_target()).average_gate_fidelity;
      },
      0.0, 40.0);
  const double err = std::abs(opt.duration - gates::rx_duration(kPi, t));
  v.require(err <= 1e-3, "optimizer X duration error " + f(err) + " fs");
}

void initialization(Verdict& v) {
  const double t = 0.04435;
  const double p0 = experiments::ideal_init_p0(20.0 * t, t);
  const double closed = 0.5 * (1.0 + 10.0 / std::sqrt(101.0));
  v.require(std::abs(p0 - closed) <= 1e-12, "P0(20T) = " + f(p0) + " (polarization 2P0-1 = " + f(2.0 * p0 - 1.0) + ")");

  auto spec = scenario_spec(experiments::Scenario::kInit, "init");
  experiments::Outcome out;
  experiments::run_experiment(spec, &out);
  const auto text = out.report.str();
  double worst = 0.0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("final_p0_", 0) == 0) {
      const auto key = line.substr(0, line.find(':'));
      const auto tag = key.substr(std::string("final_p0_").size());
      worst = std::max(worst, std::abs(report_value(text, key) - report_value(text, "ideal_p0_" + tag)));
    }
  v.require(std::isfinite(worst) && text.find("final_p0_") != std::string::npos && worst <= 1e-3,
            "Lindblad protocol |P0 - ideal| = " + f(worst) + " <= 1e-3");
  v.require(out.passed(), "init scenario checks pass");
}

void wkb_validity(Verdict& v) {
  const auto cw = well::calibrate(well::WellSettings{});
  double lo = INFINITY, hi = 0.0;
  for (double s = 6.0; s <= 16.0 + 1e-9; s += 0.5) {
    const double r = cw.wkb(s).splitting / cw.fd_splitting(s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  v.require(lo > 1.0 / 3.0 && hi < 3.0, "WKB/FD ratio in [" + f(lo) + ", " + f(hi) + "] on s = 6..16");

  well::HarmonicPotential ho;
  const auto r = well::solve_bound_states(ho, 4000, 5);
  double worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    const double exact = (n + 0.5) * ho.hbar_omega;
    worst = std::max(worst, std::abs((r.energies[n] - ho.bottom) / exact - 1.0));
  }
  v.require(worst <= 1e-3, "harmonic oscillator levels rel. error " + f(worst));
}

void reproducibility(Verdict& v) {
  using experiments::Scenario;
  for (auto sc : {Scenario::kReadout, Scenario::kHubbardCheck}) {
    auto a = scenario_spec(sc, std::string(experiments::to_string(sc)) + "_a", 42);
    auto b = scenario_spec(sc, std::string(experiments::to_string(sc)) + "_b", 42);
    a.config.noise.readout_error = b.config.noise.readout_error = 0.05;
    experiments::Outcome oa;
    experiments::run_experiment(a, &oa);
    experiments::run_experiment(b);
    bool same = !oa.outputs.empty();
    for (const auto& name : oa.outputs)
      if (name.size() > 4 && name.substr(name.size() - 4) == ".csv")
        same = same && slurp(a.out_dir / name) == slurp(b.out_dir / name);
    v.require(same, std::string(experiments::to_string(sc)) + " CSVs bit-identical");
  }
  int ok = 0;
  for (const char* state : {"0", "1", "+", "-"}) {
    auto s = scenario_spec(Scenario::kReadout, std::string("readout_") + (state[0] == '+' ? "p" : state[0] == '-' ? "m" : state), 9);
    s.config.run.readout_state = state;
    s.config.noise.readout_error = 0.1;
    experiments::Outcome o;
    ok += experiments::run_experiment(s, &o) == 0;
  }
  v.require(ok == 4, "readout 4-sigma binomial checks at 1e6 shots " + std::to_string(ok) + "/4");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"rate anchors", rate_anchors},
      {"separation sweep shape", fig2_shape},
      {"phonon timescale", phonon_timescale},
      {"hubbard-qubit projection", hubbard_oracle},
      {"two-level dynamics", two_level},
      {"coherence budget", coherence_budget},
      {"gates", gates_criterion},
      {"initialization", initialization},
      {"wkb validity", wkb_validity},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("criterion %-2zu %-26s %s  (%.1f s)  %s\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                secs, v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
