#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/layout.hpp"
#include "dbq/well/calibration.hpp"
#include "dbq/well/wkb.hpp"

namespace dbq::well {

struct SweepRow {
  double s = 0.0;
  double splitting_fd = std::numeric_limits<double>::quiet_NaN();
  double splitting_wkb = std::numeric_limits<double>::quiet_NaN();
  double rate_fd = std::numeric_limits<double>::quiet_NaN();
  double rate_wkb = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

inline constexpr double kSweepMaxSeparation = 20.0;

/// FD and WKB splittings (and the matching rates) of the calibrated symmetric
/// well at each separation. Failures are recorded in the row's status.
inline std::vector<SweepRow> sweep_separation(const CalibratedWell& cw, std::vector<double> s_values) {
  for (double s : s_values)
    if (s < kMinPairSeparation - 1e-12 || s > kSweepMaxSeparation + 1e-12)
      throw DomainError("sweep_separation: s = " + std::to_string(s) + " outside [3.84, 20]");
  std::sort(s_values.begin(), s_values.end());

  std::vector<SweepRow> rows;
  rows.reserve(s_values.size());
  for (double s : s_values) {
    SweepRow row;
    row.s = s;
    std::string status;
    try {
      row.splitting_fd = cw.fd_splitting(s);
      row.rate_fd = splitting_to_rate(row.splitting_fd);
    } catch (const std::exception& e) {
      status += std::string("fd: ") + e.what();
    }
    try {
      row.splitting_wkb = cw.wkb(s).splitting;
      row.rate_wkb = splitting_to_rate(row.splitting_wkb);
    } catch (const std::exception& e) {
      if (!status.empty()) status += "; ";
      status += std::string("wkb: ") + e.what();
    }
    if (!status.empty()) row.status = status;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Evenly spaced separations from lo to hi (inclusive) with step <= max_step.
inline std::vector<double> separation_grid(double lo, double hi, double max_step) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / max_step));
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  return s;
}

}  // namespace dbq::well
