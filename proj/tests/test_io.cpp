#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dbq/errors.hpp"
#include "dbq/io/config.hpp"
#include "dbq/io/csv.hpp"
#include "dbq/io/manifest.hpp"

using namespace dbq;
using namespace dbq::io;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) { return from_json(parse_text(text, "test")); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dbq_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, MinimalLayoutGetsDefaults) {
  const auto c = parse(R"({"layout": {"sites": [[0, 0], [7.68, 0]], "pairs": [[0, 1]]}})");
  EXPECT_EQ(c.material, MaterialParams{});
  EXPECT_EQ(c.layout.n_qubits(), 1U);
  EXPECT_DOUBLE_EQ(c.layout.separation(0), 7.68);
  EXPECT_TRUE(validate_layout(c.layout).ok());
}

TEST(Config, MaterialOverrideVisibleInResolvedConfig) {
  const auto c = parse(R"({"material": {"effective_mass_ratio": 0.19}})");
  EXPECT_DOUBLE_EQ(c.material.effective_mass_ratio, 0.19);
  EXPECT_DOUBLE_EQ(to_json(c)["material"]["effective_mass_ratio"].get<double>(), 0.19);
}

TEST(Config, UnphysicalSeparationParsesButFailsValidation) {
  const auto c = parse(R"({"layout": {"sites": [[0, 0], [2.0, 0]], "pairs": [[0, 1]]}})");
  EXPECT_TRUE(validate_layout(c.layout).has(ViolationKind::kMinSeparation));
}

TEST(Config, UnknownKeysReportTheirPath) {
  try {
    parse(R"({"noise": {"dephasing_rate_hz": 1e9, "dephasing_rte_hz": 2}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("noise.dephasing_rte_hz"), std::string::npos) << e.what();
  }
  try {
    parse(R"({"layout": {"sites": [], "pairs": [], "extra": 1}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("layout.extra"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse(R"({"nosuch": {}})"), ConfigError);
}

TEST(Config, TypeErrors) {
  EXPECT_THROW(parse(R"({"run": {"seed": -1}})"), ConfigError);
  EXPECT_THROW(parse(R"({"noise": {"drift_enabled": "yes"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"well": {"shape": "round"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"layout": {"sites": [[0, 0]], "pairs": [[0, 3]]}})"), ConfigError);
  EXPECT_THROW(parse_text("{not json", "x"), ConfigError);
}

TEST(Config, CommentsAllowed) {
  const auto c = parse("{\n// seed for the run\n\"run\": {\"seed\": 5}}");
  EXPECT_EQ(c.run.seed, 5U);
}

TEST(Config, RoundTripAndHash) {
  Config c;
  c.run.seed = 17;
  c.pulses.init_tilt_ev = 0.5;
  const auto back = from_json(to_json(c));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  EXPECT_EQ(config_hash(back), config_hash(c));
  EXPECT_EQ(config_hash(c).size(), 16U);
  c.run.seed = 18;
  EXPECT_NE(config_hash(back), config_hash(c));
}

TEST(Config, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Config, Overrides) {
  const auto c = apply_overrides(Config{}, {"noise.dephasing_rate_hz=2e9", "qubit.zz_convention=full",
                                            "pulses.init_tilt_ev=0.4", "run.dump_hamiltonian=true"});
  EXPECT_DOUBLE_EQ(c.noise.dephasing_rate_hz, 2e9);
  EXPECT_EQ(c.qubit.zz_convention, "full");
  EXPECT_DOUBLE_EQ(*c.pulses.init_tilt_ev, 0.4);
  EXPECT_TRUE(c.run.dump_hamiltonian);
  EXPECT_THROW(apply_overrides(Config{}, {"noise.bogus=1"}), ConfigError);
  EXPECT_THROW(apply_overrides(Config{}, {"seed=1"}), ConfigError);
  EXPECT_THROW(apply_overrides(Config{}, {"run.seed"}), ConfigError);
  EXPECT_THROW(apply_overrides(Config{}, {"run.seed=abc"}), ConfigError);
}

TEST(Config, LoadFromFile) {
  const auto dir = scratch("load");
  std::ofstream(dir / "c.json") << R"({"run": {"shots": 1000}})";
  EXPECT_EQ(load_config((dir / "c.json").string()).run.shots, 1000U);
  EXPECT_THROW(load_config((dir / "missing.json").string()), ConfigError);
}

TEST(Csv, FormattingAndTermination) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.5e14), "2.5e+14");
  EXPECT_EQ(format_double(-1e-20), "-1e-20");
  const auto dir = scratch("csv");
  {
    CsvWriter w(dir / "a.csv", {"x", "y"});
    w.row(std::vector<double>{1.5, 0.25});
    w.row(std::vector<std::string>{"a", "b"});
    EXPECT_THROW(w.row(std::vector<double>{1.0}), StructuralError);
  }
  EXPECT_EQ(slurp(dir / "a.csv"), "x,y\n1.5,0.25\na,b\n");
}

TEST(Csv, LocaleIndependentDecimalPoint) {
  const auto old = std::locale::global(std::locale::classic());
  try {
    std::locale::global(std::locale("de_DE.UTF-8"));
  } catch (const std::runtime_error&) {
  }
  EXPECT_EQ(format_double(3.25), "3.25");
  std::locale::global(old);
}

TEST(Manifest, RecordsHashSeedVersionsAndTimes) {
  const auto dir = scratch("manifest");
  Config c;
  RunRecord rec;
  rec.scenario = "rabi";
  rec.seed = 99;
  rec.started = rec.finished = std::chrono::system_clock::time_point{};
  rec.outputs = {"a.csv"};
  write_manifest(dir, c, rec);
  const auto m = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["config_hash"], config_hash(c));
  EXPECT_EQ(m["seed"], 99);
  EXPECT_EQ(m["timestamps"]["started"], "1970-01-01T00:00:00Z");
  EXPECT_TRUE(m["versions"].contains("dbq"));
  EXPECT_TRUE(m["versions"].contains("eigen"));
  EXPECT_EQ(from_json(json::parse(slurp(dir / "config.resolved.json"))).run.seed, c.run.seed);
}
