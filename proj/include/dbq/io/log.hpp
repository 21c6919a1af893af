#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace dbq::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Verbosity from DBQ_LOG (error, warn, info, debug); warn when unset.
inline Level threshold() {
  static const Level level = [] {
    const char* env = std::getenv("DBQ_LOG");
    const std::string v = env ? env : "";
    if (v == "error") return Level::kError;
    if (v == "info") return Level::kInfo;
    if (v == "debug") return Level::kDebug;
    return Level::kWarn;
  }();
  return level;
}

inline void write(Level l, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (static_cast<int>(l) <= static_cast<int>(threshold()))
    std::cerr << "[dbq " << names[static_cast<int>(l)] << "] " << msg << '\n';
}

inline void error(const std::string& m) { write(Level::kError, m); }
inline void warn(const std::string& m) { write(Level::kWarn, m); }
inline void info(const std::string& m) { write(Level::kInfo, m); }
inline void debug(const std::string& m) { write(Level::kDebug, m); }

}  // namespace dbq::log
