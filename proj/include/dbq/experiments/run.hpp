#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "dbq/experiments/entangle.hpp"
#include "dbq/experiments/fig2.hpp"
#include "dbq/experiments/hubbard_check.hpp"
#include "dbq/experiments/init.hpp"
#include "dbq/experiments/rabi.hpp"
#include "dbq/experiments/readout.hpp"
#include "dbq/io/manifest.hpp"

namespace dbq::experiments {

inline Scenario parse_scenario(const std::string& s) {
  for (auto sc : {Scenario::kFig2, Scenario::kRabi, Scenario::kInit, Scenario::kReadout, Scenario::kEntangle,
                  Scenario::kHubbardCheck})
    if (s == to_string(sc)) return sc;
  throw DomainError("unknown scenario '" + s + "'");
}

inline Outcome dispatch(const ExperimentSpec& spec) {
  switch (spec.scenario) {
    case Scenario::kFig2: return run_fig2(spec);
    case Scenario::kRabi: return run_rabi(spec);
    case Scenario::kInit: return run_init(spec);
    case Scenario::kReadout: return run_readout(spec);
    case Scenario::kEntangle: return run_entangle(spec);
    case Scenario::kHubbardCheck: return run_hubbard_check(spec);
  }
  throw StructuralError("unknown scenario");
}

inline bool uses_layout(Scenario s) {
  return s == Scenario::kRabi || s == Scenario::kInit || s == Scenario::kEntangle;
}

/// Layout rule violations become failed checks; nothing is simulated.
inline Outcome layout_rejection(const ExperimentSpec& spec, const ValidationReport& v) {
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", to_string(spec.scenario)).kv("seed", spec.seed).kv("config_hash", io::config_hash(spec.config));
  for (const auto& x : v.violations) rep.check(std::string("layout_") + to_string(x.kind), false, x.message);
  write_report(spec.out_dir, std::string(to_string(spec.scenario)) + "_report.txt", rep, out);
  return out;
}

/// Runs one scenario into spec.out_dir and writes the manifest. Returns the
/// process exit code: 0 when every check passes, 2 otherwise.
inline int run_experiment(const ExperimentSpec& spec, Outcome* result = nullptr) {
  std::filesystem::create_directories(spec.out_dir);
  io::RunRecord rec;
  rec.scenario = to_string(spec.scenario);
  rec.seed = spec.seed;
  rec.started = std::chrono::system_clock::now();
  Outcome out;
  const auto layout_report = uses_layout(spec.scenario) ? validate_layout(spec.config.layout) : ValidationReport{};
  out = layout_report.ok() ? dispatch(spec) : layout_rejection(spec, layout_report);
  rec.finished = std::chrono::system_clock::now();
  rec.outputs = out.outputs;
  rec.exit_code = out.passed() ? 0 : 2;
  io::write_manifest(spec.out_dir, spec.config, rec);
  if (result) *result = std::move(out);
  return rec.exit_code;
}

}  // namespace dbq::experiments
