#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/experiments/run.hpp"
#include "dbq/io/config.hpp"
#include "dbq/io/log.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kValidationFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dangling-bond charge qubit experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DBQ_VERSION_STRING);

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 0, shots = 0;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Configuration file (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "64-bit seed (defaults to run.seed)");
    sub->add_option("--shots", shots, "Readout shots (defaults to run.shots)");
    sub->add_option("--override", overrides, "section.field=value, repeatable")->take_all();
  };
  for (const char* name : {"fig2", "rabi", "init", "readout", "entangle", "hubbard-check"})
    add_common(app.add_subcommand(name, std::string("Run the ") + name + " scenario"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  dbq::experiments::ExperimentSpec spec;
  try {
    spec.scenario = dbq::experiments::parse_scenario(app.get_subcommands().front()->get_name());
    dbq::io::Config cfg = config_path.empty() ? dbq::io::Config{} : dbq::io::load_config(config_path);
    cfg = dbq::io::apply_overrides(cfg, overrides);
    if (app.get_subcommands().front()->count("--seed")) cfg.run.seed = seed;
    if (app.get_subcommands().front()->count("--shots")) {
      if (shots == 0) throw dbq::ConfigError("--shots", "must be >= 1");
      cfg.run.shots = shots;
    }
    spec.config = cfg;
    spec.seed = cfg.run.seed;
    spec.shots = cfg.run.shots;
    spec.out_dir = out_dir;
  } catch (const dbq::ConfigError& e) {
    dbq::log::error(std::string("configuration: ") + e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    dbq::log::error(e.what());
    return kUsageError;
  }

  try {
    dbq::experiments::Outcome outcome;
    dbq::log::info(std::string("running ") + to_string(spec.scenario) + " into " + spec.out_dir.string());
    const int code = dbq::experiments::run_experiment(spec, &outcome);
    std::cout << outcome.report.str();
    if (code != 0) dbq::log::warn("one or more physics checks failed");
    return code;
  } catch (const dbq::ConfigError& e) {
    dbq::log::error(std::string("configuration: ") + e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    dbq::log::error(e.what());
    return kValidationFailure;
  }
}
