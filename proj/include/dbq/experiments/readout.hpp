#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "dbq/dynamics/measure.hpp"
#include "dbq/experiments/common.hpp"
#include "dbq/qubit/hq.hpp"

namespace dbq::experiments {

struct ReadoutCounts {
  dynamics::Counts raw;
  double p1_true = 0.0;
  double readout_error = 0.0;

  double p1_raw() const { return raw.fraction1(); }
  /// Inverse of the symmetric confusion channel: (p_obs - e) / (1 - 2e).
  double p1_corrected() const { return (p1_raw() - readout_error) / (1.0 - 2.0 * readout_error); }
};

/// Each shot draws a Born outcome, then flips it with probability e; both
/// draws come from one mt19937_64 stream seeded with `seed`.
inline ReadoutCounts sample_readout(double p1, std::uint64_t shots, double readout_error, std::uint64_t seed) {
  if (shots == 0) throw DomainError("readout: shots must be >= 1");
  if (!(readout_error >= 0.0 && readout_error < 0.5)) throw DomainError("readout: error rate must be in [0, 0.5)");
  std::mt19937_64 rng(seed);
  ReadoutCounts c;
  c.p1_true = p1;
  c.readout_error = readout_error;
  for (std::uint64_t s = 0; s < shots; ++s) {
    int bit = dynamics::uniform01(rng) < p1 ? 1 : 0;
    if (dynamics::uniform01(rng) < readout_error) bit ^= 1;
    (bit ? c.raw.n1 : c.raw.n0) += 1;
  }
  return c;
}

inline dynamics::QuantumState prepare_label(const std::string& label) {
  const auto [plus, minus] = qubit::conjugate_basis_states();
  if (label == "0") return dynamics::QuantumState::basis(1, 0);
  if (label == "1") return dynamics::QuantumState::basis(1, 1);
  if (label == "+") return dynamics::QuantumState::pure(plus);
  if (label == "-") return dynamics::QuantumState::pure(minus);
  throw ConfigError("run.readout_state", "expected one of 0, 1, +, -");
}

inline Outcome run_readout(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "readout").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));
  const double e = cfg.noise.readout_error;
  if (!(e >= 0.0 && e < 0.5)) throw ConfigError("noise.readout_error", "must be in [0, 0.5)");

  const auto state = prepare_label(cfg.run.readout_state);
  const auto c = sample_readout(state.population1(0), spec.shots, e, spec.seed);
  {
    io::CsvWriter csv(spec.out_dir / "readout.csv",
                      {"state", "shots", "n0", "n1", "readout_error", "p1_true", "p1_raw", "p1_corrected"});
    csv.row({cfg.run.readout_state, std::to_string(spec.shots), std::to_string(c.raw.n0), std::to_string(c.raw.n1),
             fmt(e), fmt(c.p1_true), fmt(c.p1_raw()), fmt(c.p1_corrected())});
    out.outputs.push_back("readout.csv");
  }

  const double n = static_cast<double>(spec.shots);
  const double q = c.p1_true * (1.0 - e) + (1.0 - c.p1_true) * e;  // expected observed P(1)
  const double sigma = std::sqrt(std::max(q * (1.0 - q), 0.0) / n);
  rep.section("counts");
  rep.kv("state", cfg.run.readout_state).kv("shots", spec.shots).kv("n0", c.raw.n0).kv("n1", c.raw.n1);
  rep.kv("readout_error", e).kv("p1_true", c.p1_true).kv("p1_raw", c.p1_raw()).kv("p1_corrected", c.p1_corrected());
  rep.kv("binomial_sigma", sigma);
  const double dev = std::abs(c.p1_raw() - q);
  rep.check("raw_within_4_sigma", dev <= 4.0 * sigma + 1e-15, "|" + fmt(c.p1_raw()) + " - " + fmt(q) + "| vs " + fmt(4.0 * sigma));
  const double bias = std::abs(c.p1_corrected() - c.p1_true);
  rep.check("corrected_within_4_sigma", bias <= 4.0 * sigma / (1.0 - 2.0 * e) + 1e-15, "bias " + fmt(bias));
  write_report(spec.out_dir, "readout_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
