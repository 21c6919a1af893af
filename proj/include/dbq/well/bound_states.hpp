#pragma once

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/units.hpp"
#include "dbq/well/potential.hpp"

namespace dbq::well {

struct BoundStateResult {
  std::vector<double> energies;                   // eV, ascending, all < 0
  std::vector<std::vector<double>> wavefunctions;  // one per energy, on `grid`
  std::vector<double> grid;                       // interior nodes, Angstrom
  double grid_spacing = 0.0;
  /// max(|psi| at the two outermost nodes) / max|psi| over all returned states.
  double boundary_amplitude = 0.0;

  bool empty() const { return energies.empty(); }
  double splitting() const { return energies.size() >= 2 ? energies[1] - energies[0] : 0.0; }
};

namespace detail {

struct TridiagEigen {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major, n x m
  int m = 0;
};

// Lowest eigenpairs of a symmetric tridiagonal matrix restricted to (-inf, upper).
inline TridiagEigen lowest_below(std::vector<double> diag, std::vector<double> off, double upper, int max_states,
                                 bool want_vectors) {
  const auto n = static_cast<lapack_int>(diag.size());
  TridiagEigen out;
  // Gershgorin lower bound for the search interval.
  double lower = diag[0];
  for (lapack_int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lower = std::min(lower, diag[i] - r);
  }
  if (!(upper > lower)) return out;

  std::vector<double> w(n);
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(n) * max_states : 1);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int m = 0;
  off.push_back(0.0);  // dstevr wants length n workspace for e
  // First count the states under `upper` without vectors, then fetch only the
  // lowest `max_states` of them by index.
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, std::vector<double>(diag).data(),
                                   std::vector<double>(off).data(), lower - 1.0, upper, 0, 0, 0.0, &m, w.data(),
                                   nullptr, 1, isuppz.data());
  if (info != 0) throw std::runtime_error("dstevr failed with info " + std::to_string(info));
  if (m == 0) return out;
  const lapack_int take = std::min<lapack_int>(m, max_states);
  info = LAPACKE_dstevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                        take, 0.0, &m, w.data(), z.data(), want_vectors ? n : 1, isuppz.data());
  if (info != 0) throw std::runtime_error("dstevr failed with info " + std::to_string(info));
  out.m = m;
  out.values.assign(w.begin(), w.begin() + m);
  if (want_vectors) out.vectors.assign(z.begin(), z.begin() + static_cast<std::size_t>(n) * m);
  return out;
}

}  // namespace detail

/// Bound states of -(hbar^2/2m*) d^2/dx^2 + V(x) with Dirichlet walls at the
/// domain ends, discretized with the three-point stencil on `n_grid` interior
/// nodes. Only states with E < 0 (below the plateau) are returned, lowest
/// first, at most `max_states` of them. Square wells are sampled by cell
/// average so that the discrete problem converges smoothly in h.
///
/// Sign convention: each wavefunction is positive at its largest-magnitude
/// node in x >= 0 (falls back to the whole grid if that half is empty).
template <Potential1D P>
BoundStateResult solve_bound_states(const P& pot, std::size_t n_grid, int max_states = 4, bool want_vectors = true) {
  if (n_grid < 500) throw DomainError("solve_bound_states: n_grid must be >= 500");
  if (!(pot.x_max > pot.x_min)) throw DomainError("solve_bound_states: empty domain");
  if (max_states < 1) throw DomainError("solve_bound_states: max_states must be >= 1");

  BoundStateResult res;
  const double h = (pot.x_max - pot.x_min) / static_cast<double>(n_grid + 1);
  const double t = units::kinetic_prefactor(pot.m_star) / (h * h);
  res.grid_spacing = h;
  res.grid.resize(n_grid);
  std::vector<double> diag(n_grid), off(n_grid - 1, -t);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double x = pot.x_min + h * static_cast<double>(i + 1);
    res.grid[i] = x;
    diag[i] = 2.0 * t + sample_cell(pot, x, h);
  }

  auto eig = detail::lowest_below(std::move(diag), std::move(off), 0.0, max_states, want_vectors);
  res.energies = eig.values;
  if (!want_vectors) return res;

  double edge = 0.0;
  for (int k = 0; k < eig.m; ++k) {
    std::vector<double> psi(eig.vectors.begin() + static_cast<std::ptrdiff_t>(k * n_grid),
                            eig.vectors.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_grid));
    double norm2 = 0.0, peak = 0.0;
    for (double v : psi) {
      norm2 += v * v * h;
      peak = std::max(peak, std::abs(v));
    }
    const double scale = 1.0 / std::sqrt(norm2);
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      if (res.grid[i] >= 0.0 && std::abs(psi[i]) > best) {
        best = std::abs(psi[i]);
        arg = i;
      }
    }
    if (best < 0.0) arg = static_cast<std::size_t>(std::max_element(psi.begin(), psi.end(), [](double a, double b) {
                                                      return std::abs(a) < std::abs(b);
                                                    }) - psi.begin());
    const double sign = psi[arg] < 0.0 ? -1.0 : 1.0;
    for (double& v : psi) v *= sign * scale;
    edge = std::max(edge, std::max(std::abs(psi.front()), std::abs(psi.back())) / (peak * scale));
    res.wavefunctions.push_back(std::move(psi));
  }
  res.boundary_amplitude = edge;
  return res;
}

}  // namespace dbq::well
