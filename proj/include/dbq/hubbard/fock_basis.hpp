#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbq/errors.hpp"

namespace dbq::hubbard {

enum class Spin : int { kUp = 0, kDown = 1 };

/// Occupation bitstring. Orbital 2*site + spin, i.e. site-major with spin-up
/// before spin-down; every fermionic sign in this module derives from that
/// single ordering.
using FockState = std::uint64_t;

constexpr int orbital(std::size_t site, Spin s) { return 2 * static_cast<int>(site) + static_cast<int>(s); }
constexpr bool occupied(FockState st, int orb) { return (st >> orb) & 1U; }
constexpr int site_occupation(FockState st, std::size_t site) {
  return static_cast<int>(occupied(st, orbital(site, Spin::kUp))) +
         static_cast<int>(occupied(st, orbital(site, Spin::kDown)));
}

/// (-1)^(number of occupied orbitals strictly below `orb`).
constexpr int parity_below(FockState st, int orb) {
  const FockState mask = (FockState{1} << orb) - 1;
  return (std::popcount(st & mask) & 1) ? -1 : 1;
}

/// Applies c^dag_to c_from. Returns nullopt when the result vanishes.
struct SignedState {
  FockState state;
  int sign;
};
constexpr std::optional<SignedState> hop(FockState st, int to, int from) {
  if (!occupied(st, from)) return std::nullopt;
  int sign = parity_below(st, from);
  st &= ~(FockState{1} << from);
  if (occupied(st, to)) return std::nullopt;
  sign *= parity_below(st, to);
  st |= FockState{1} << to;
  return SignedState{st, sign};
}

/// Sorted list of Fock states in one (N_e, S_z) sector, or the full Fock space.
class FockBasis {
 public:
  static constexpr std::size_t kMaxSites = 16;

  /// `two_sz` is 2*S_z; -1 for `n_electrons` means no constraints at all.
  FockBasis(std::size_t n_sites, int n_electrons, int two_sz, std::vector<FockState> states)
      : n_sites_(n_sites), n_electrons_(n_electrons), two_sz_(two_sz), states_(std::move(states)) {}

  std::size_t n_sites() const { return n_sites_; }
  int n_electrons() const { return n_electrons_; }
  int two_sz() const { return two_sz_; }
  bool is_full_space() const { return n_electrons_ < 0; }
  std::size_t dimension() const { return states_.size(); }
  const std::vector<FockState>& states() const { return states_; }
  FockState state(std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index_of(FockState st) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), st);
    if (it == states_.end() || *it != st) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

 private:
  std::size_t n_sites_;
  int n_electrons_;
  int two_sz_;
  std::vector<FockState> states_;
};

inline int count_spin(FockState st, std::size_t n_sites, Spin s) {
  int n = 0;
  for (std::size_t i = 0; i < n_sites; ++i) n += occupied(st, orbital(i, s));
  return n;
}

/// Every Fock state of `n_sites` sites with `n_electrons` electrons and
/// S_z = sz (must be a multiple of 1/2 compatible with the electron count).
inline FockBasis build_basis(std::size_t n_sites, int n_electrons, double sz) {
  if (n_sites == 0 || n_sites > FockBasis::kMaxSites)
    throw DomainError("build_basis: n_sites must be in [1, " + std::to_string(FockBasis::kMaxSites) + "]");
  if (n_electrons < 0 || n_electrons > static_cast<int>(2 * n_sites))
    throw DomainError("build_basis: n_electrons must be in [0, 2 n_sites]");
  const double two_sz_d = 2.0 * sz;
  const int two_sz = static_cast<int>(std::lround(two_sz_d));
  if (std::abs(two_sz_d - two_sz) > 1e-9 || std::abs(two_sz) > n_electrons || ((n_electrons + two_sz) & 1))
    throw DomainError("build_basis: S_z = " + std::to_string(sz) + " incompatible with " +
                      std::to_string(n_electrons) + " electrons");
  const int n_up = (n_electrons + two_sz) / 2;
  const int n_dn = n_electrons - n_up;
  if (n_up > static_cast<int>(n_sites) || n_dn > static_cast<int>(n_sites))
    throw DomainError("build_basis: sector does not fit on " + std::to_string(n_sites) + " sites");

  auto subsets = [n_sites](int k) {
    std::vector<std::uint32_t> out;
    if (k == 0) return std::vector<std::uint32_t>{0};
    const std::uint32_t limit = std::uint32_t{1} << n_sites;
    for (std::uint32_t v = (std::uint32_t{1} << k) - 1; v < limit;) {
      out.push_back(v);
      const std::uint32_t t = v | (v - 1);  // Gosper's hack: next subset of equal popcount
      v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
  };
  auto interleave = [n_sites](std::uint32_t up, std::uint32_t dn) {
    FockState st = 0;
    for (std::size_t i = 0; i < n_sites; ++i) {
      if ((up >> i) & 1U) st |= FockState{1} << orbital(i, Spin::kUp);
      if ((dn >> i) & 1U) st |= FockState{1} << orbital(i, Spin::kDown);
    }
    return st;
  };
  std::vector<FockState> states;
  const auto ups = subsets(n_up), dns = subsets(n_dn);
  states.reserve(ups.size() * dns.size());
  for (auto u : ups)
    for (auto d : dns) states.push_back(interleave(u, d));
  std::sort(states.begin(), states.end());
  return FockBasis(n_sites, n_electrons, two_sz, std::move(states));
}

/// The whole 4^n_sites dimensional Fock space, no sector constraint.
inline FockBasis build_full_basis(std::size_t n_sites) {
  if (n_sites == 0 || n_sites > 6) throw DomainError("build_full_basis: n_sites must be in [1, 6]");
  const FockState limit = FockState{1} << (2 * n_sites);
  std::vector<FockState> states(limit);
  for (FockState st = 0; st < limit; ++st) states[st] = st;
  return FockBasis(n_sites, -1, 0, std::move(states));
}

}  // namespace dbq::hubbard
