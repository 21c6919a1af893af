#pragma once

#include <Eigen/Core>
#include <boost/version.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dbq/io/config.hpp"
#include "dbq/version.hpp"

namespace dbq::io {

inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::vector<std::string> outputs;
  int exit_code = 0;
};

inline json versions() {
  return {{"dbq", DBQ_VERSION_STRING},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

/// manifest.json plus the fully resolved configuration.
inline void write_manifest(const std::filesystem::path& dir, const Config& cfg, const RunRecord& rec) {
  std::ofstream(dir / "config.resolved.json") << to_json(cfg).dump(2) << '\n';
  json m = {{"scenario", rec.scenario},
            {"config_hash", config_hash(cfg)},
            {"seed", rec.seed},
            {"versions", versions()},
            {"timestamps", {{"started", utc_timestamp(rec.started)}, {"finished", utc_timestamp(rec.finished)}}},
            {"outputs", rec.outputs},
            {"exit_code", rec.exit_code}};
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

}  // namespace dbq::io
