#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dbq/experiments/run.hpp"

using namespace dbq;
using namespace dbq::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dbq_exp_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentSpec spec_for(Scenario s, const std::string& dir, std::uint64_t seed = 7, std::uint64_t shots = 100000) {
  ExperimentSpec spec;
  spec.scenario = s;
  spec.out_dir = scratch(dir);
  spec.seed = seed;
  spec.shots = shots;
  spec.config.run.draws = 20;
  return spec;
}

}  // namespace

TEST(Readout, NoiselessBasisStatesAreDeterministic) {
  const auto one = sample_readout(1.0, 10000, 0.0, 3);
  EXPECT_EQ(one.raw.n1, 10000U);
  const auto zero = sample_readout(0.0, 10000, 0.0, 3);
  EXPECT_EQ(zero.raw.n0, 10000U);
}

TEST(Readout, SymmetricErrorAndCorrection) {
  const auto c = sample_readout(0.0, 1000000, 0.1, 11);
  EXPECT_NEAR(c.p1_raw(), 0.1, 0.0013);
  EXPECT_LT(std::abs(c.p1_corrected()), 1e-3);
  const auto plus = sample_readout(0.5, 1000000, 0.2, 12);
  EXPECT_NEAR(plus.p1_corrected(), 0.5, 3e-3);
}

TEST(Readout, SameSeedSameCounts) {
  const auto a = sample_readout(0.3, 50000, 0.05, 99);
  const auto b = sample_readout(0.3, 50000, 0.05, 99);
  const auto c = sample_readout(0.3, 50000, 0.05, 100);
  EXPECT_EQ(a.raw.n1, b.raw.n1);
  EXPECT_NE(a.raw.n1, c.raw.n1);
}

TEST(Readout, BadInputs) {
  EXPECT_THROW(sample_readout(0.5, 0, 0.0, 1), DomainError);
  EXPECT_THROW(sample_readout(0.5, 10, 0.5, 1), DomainError);
  EXPECT_THROW(prepare_label("2"), ConfigError);
  EXPECT_NEAR(prepare_label("+").population1(0), 0.5, 1e-15);
  EXPECT_NEAR(prepare_label("-").population1(0), 0.5, 1e-15);
}

TEST(Init, ThermalFormula) {
  const double t = 0.04435;
  const double p0 = ideal_init_p0(20.0 * t, t);
  EXPECT_NEAR(p0, 0.5 * (1.0 + 10.0 / std::sqrt(101.0)), 1e-12);
  EXPECT_NEAR(p0, 0.997519, 1e-6);
  EXPECT_NEAR(2.0 * p0 - 1.0, 0.99504, 1e-5);
  EXPECT_DOUBLE_EQ(ideal_init_p0(0.0, t), 0.5);
  EXPECT_NEAR(ideal_init_p0(-20.0 * t, t), 1.0 - p0, 1e-15);
}

TEST(Fit, LinearFitRecoversLine) {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i);
    y.push_back(3.0 - 0.5 * i);
  }
  const auto f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, -0.5, 1e-12);
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
}

TEST(Fit, DampedCosineFrequencyAndEnvelope) {
  const double f_per_fs = 1.0 / 50.0, tau = 4000.0;
  std::vector<dynamics::TrajectorySample> s;
  const std::size_t dense = 3200;
  for (std::size_t i = 0; i < dense; ++i) {
    const double t = 0.5 * static_cast<double>(i);
    s.push_back({t, {0.5 - 0.5 * std::exp(-t / tau) * std::cos(2 * units::kPi * f_per_fs * t)}, 1.0});
  }
  const auto fit = fit_oscillation(s, dense, 200);
  EXPECT_NEAR(fit.frequency_hz, units::per_fs_to_hz(f_per_fs), 1e-3 * units::per_fs_to_hz(f_per_fs));
  EXPECT_NEAR(fit.decay_time_fs, tau, 0.05 * tau);
  EXPECT_NEAR(fit.oscillations_before_decay, tau * f_per_fs, 0.05 * tau * f_per_fs);
}

TEST(Fit, UndampedHasInfiniteDecayTime) {
  std::vector<dynamics::TrajectorySample> s;
  for (int i = 0; i < 2000; ++i) {
    const double t = i;
    s.push_back({t, {0.5 - 0.5 * std::cos(2 * units::kPi * t / 40.0)}, 1.0});
  }
  EXPECT_TRUE(std::isinf(fit_oscillation(s, 2000, 200).decay_time_fs));
}

TEST(Fig2, DecadesHelper) {
  EXPECT_NEAR(decades({1e8, 1e9, 5e8}), 1.0, 1e-12);
  EXPECT_NEAR(decades({2.0, 2.0}), 0.0, 1e-12);
}

TEST(Scenario, Parse) {
  EXPECT_EQ(parse_scenario("hubbard-check"), Scenario::kHubbardCheck);
  EXPECT_EQ(parse_scenario("fig2"), Scenario::kFig2);
  EXPECT_THROW(parse_scenario("fig3"), DomainError);
}

TEST(Run, ReadoutWritesManifestAndIsReproducible) {
  auto a = spec_for(Scenario::kReadout, "readout_a");
  auto b = spec_for(Scenario::kReadout, "readout_b");
  auto c = spec_for(Scenario::kReadout, "readout_c", 8);
  a.config.noise.readout_error = b.config.noise.readout_error = c.config.noise.readout_error = 0.05;
  EXPECT_EQ(run_experiment(a), 0);
  EXPECT_EQ(run_experiment(b), 0);
  EXPECT_EQ(run_experiment(c), 0);
  const auto csv = slurp(a.out_dir / "readout.csv");
  EXPECT_EQ(csv, slurp(b.out_dir / "readout.csv"));
  EXPECT_NE(csv, slurp(c.out_dir / "readout.csv"));
  EXPECT_EQ(csv.rfind("state,shots,n0,n1,", 0), 0U);
  EXPECT_EQ(csv.back(), '\n');

  const auto m = io::json::parse(slurp(a.out_dir / "manifest.json"));
  EXPECT_EQ(m["scenario"], "readout");
  EXPECT_EQ(m["seed"], 7);
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_EQ(m["config_hash"], io::config_hash(a.config));
  EXPECT_TRUE(fs::exists(a.out_dir / "config.resolved.json"));
}

TEST(Run, HubbardCheckPassesAndIsBitIdentical) {
  auto a = spec_for(Scenario::kHubbardCheck, "hc_a");
  auto b = spec_for(Scenario::kHubbardCheck, "hc_b");
  Outcome out;
  EXPECT_EQ(run_experiment(a, &out), 0) << out.report.str();
  EXPECT_EQ(run_experiment(b), 0);
  EXPECT_EQ(slurp(a.out_dir / "hubbard_check.csv"), slurp(b.out_dir / "hubbard_check.csv"));
}

TEST(Run, InvalidLayoutIsAPhysicsFailure) {
  auto spec = spec_for(Scenario::kEntangle, "bad_layout");
  spec.config.layout.sites[1].x = 2.0;
  Outcome out;
  EXPECT_EQ(run_experiment(spec, &out), 2);
  EXPECT_NE(out.report.str().find("layout_min-separation: FAIL"), std::string::npos) << out.report.str();
  EXPECT_EQ(io::json::parse(slurp(spec.out_dir / "manifest.json"))["exit_code"], 2);
}

TEST(Run, Fig2ReportsSweepColumns) {
  auto spec = spec_for(Scenario::kFig2, "fig2");
  Outcome out;
  const int code = run_experiment(spec, &out);
  EXPECT_TRUE(code == 0 || code == 2);
  const auto csv = slurp(spec.out_dir / "fig2.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "s_angstrom,splitting_fd_ev,splitting_wkb_ev,rate_fd_hz,rate_wkb_hz,status,phonon_rate_hz");
  const auto m = io::json::parse(slurp(spec.out_dir / "manifest.json"));
  EXPECT_EQ(m["exit_code"], code);
}
