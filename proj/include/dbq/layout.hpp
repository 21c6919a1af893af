#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/units.hpp"

namespace dbq {

inline constexpr double kMinPairSeparation = 3.84;  // Angstrom, Si(100) lattice bound
inline constexpr double kTunnelRange = 16.0;        // Angstrom

struct Site {
  double x = 0.0;  // Angstrom
  double y = 0.0;
  bool operator==(const Site&) const = default;
};

/// A DB pair hosting one excess electron. `left` is the site whose occupation
/// encodes logical |0>.
struct PairIndices {
  std::size_t left = 0;
  std::size_t right = 0;
  bool operator==(const PairIndices&) const = default;
};

inline double distance(const Site& a, const Site& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct DeviceLayout {
  std::vector<Site> sites;
  std::vector<PairIndices> pairs;

  bool operator==(const DeviceLayout&) const = default;

  std::size_t n_qubits() const { return pairs.size(); }

  double separation(std::size_t pair) const {
    const auto& p = pairs.at(pair);
    return distance(sites.at(p.left), sites.at(p.right));
  }

  double site_distance(std::size_t i, std::size_t j) const { return distance(sites.at(i), sites.at(j)); }

  std::vector<std::vector<double>> distance_matrix() const {
    const std::size_t n = sites.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = distance(sites[i], sites[j]);
    return d;
  }

  /// Pair index per site, or npos for unpaired sites. Throws StructuralError
  /// for out-of-range indices, self-pairs and sites claimed twice.
  std::vector<std::size_t> pair_membership() const {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(sites.size(), npos);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      for (std::size_t idx : {pairs[p].left, pairs[p].right}) {
        if (idx >= sites.size())
          throw StructuralError("pair " + std::to_string(p) + " references site " + std::to_string(idx) +
                                " but layout has " + std::to_string(sites.size()) + " sites");
        if (owner[idx] != npos)
          throw StructuralError("site " + std::to_string(idx) + " belongs to more than one pair");
        owner[idx] = p;
      }
      if (pairs[p].left == pairs[p].right)
        throw StructuralError("pair " + std::to_string(p) + " uses the same site twice");
    }
    return owner;
  }
};

enum class ViolationKind { kMinSeparation, kTunnelRange, kCrossPairIsolation };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kMinSeparation: return "min-separation";
    case ViolationKind::kTunnelRange: return "tunnel-range";
    case ViolationKind::kCrossPairIsolation: return "cross-pair-isolation";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    for (const auto& v : violations)
      if (v.kind == k) return true;
    return false;
  }
};

/// Checks the geometric rules for DB-pair qubits: 3.84 <= s <= 16 inside each
/// pair (both ends inclusive) and strictly more than 16 Angstrom between any
/// two sites of different pairs. Structural problems throw instead.
inline ValidationReport validate_layout(const DeviceLayout& layout) {
  if (layout.pairs.empty()) throw StructuralError("layout must contain at least one pair");
  const auto owner = layout.pair_membership();

  ValidationReport report;
  for (std::size_t p = 0; p < layout.pairs.size(); ++p) {
    const double s = layout.separation(p);
    if (s < kMinPairSeparation)
      report.violations.push_back({ViolationKind::kMinSeparation,
                                   "pair " + std::to_string(p) + " separation " + std::to_string(s) +
                                       " A is below 3.84 A"});
    if (s > kTunnelRange)
      report.violations.push_back({ViolationKind::kTunnelRange, "pair " + std::to_string(p) + " separation " +
                                                                    std::to_string(s) + " A exceeds 16 A"});
  }
  constexpr auto npos = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < layout.sites.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.sites.size(); ++j) {
      if (owner[i] == npos || owner[j] == npos || owner[i] == owner[j]) continue;
      const double d = layout.site_distance(i, j);
      if (!(d > kTunnelRange))
        report.violations.push_back({ViolationKind::kCrossPairIsolation,
                                     "sites " + std::to_string(i) + " and " + std::to_string(j) +
                                         " of different pairs are " + std::to_string(d) + " A apart"});
    }
  }
  return report;
}

/// Screened Coulomb energy e^2/(4 pi eps0 eps r) in eV for r in Angstrom.
inline double screened_coulomb(double r_angstrom, double eps) {
  if (!(r_angstrom > 0.0)) throw DomainError("screened_coulomb: distance must be positive");
  if (!(eps >= 1.0)) throw DomainError("screened_coulomb: relative permittivity must be >= 1");
  return units::kCoulomb / (eps * r_angstrom);
}

}  // namespace dbq
