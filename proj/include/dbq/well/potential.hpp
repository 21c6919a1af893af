#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>

#include "dbq/errors.hpp"
#include "dbq/units.hpp"

namespace dbq::well {

enum class WellShape { kSquare, kGaussian };

inline const char* to_string(WellShape s) { return s == WellShape::kSquare ? "square" : "gaussian"; }

inline WellShape parse_shape(const std::string& s) {
  if (s == "square") return WellShape::kSquare;
  if (s == "gaussian") return WellShape::kGaussian;
  throw DomainError("unknown well shape '" + s + "'");
}

/// Anything the finite-difference solver can discretize: a callable V(x) in eV
/// on the closed domain [x_min, x_max] (Angstrom) plus the effective mass.
template <class P>
concept Potential1D = requires(const P& p, double x) {
  { p(x) } -> std::convertible_to<double>;
  { p.x_min } -> std::convertible_to<double>;
  { p.x_max } -> std::convertible_to<double>;
  { p.m_star } -> std::convertible_to<double>;
};

namespace detail {

inline void check_domain(double x, double lo, double hi) {
  if (!(x >= lo && x <= hi))
    throw DomainError("x = " + std::to_string(x) + " outside potential domain [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
}

/// Length of [a, b] intersected with [c, d].
inline double overlap(double a, double b, double c, double d) { return std::max(0.0, std::min(b, d) - std::max(a, c)); }

// For Gaussian wells the width is taken as 2 sigma.
inline double gaussian(double x, double center, double width) {
  const double sigma = 0.5 * width;
  const double u = (x - center) / sigma;
  return std::exp(-0.5 * u * u);
}

}  // namespace detail

/// A single well centered at the origin. Plateau at 0, floor at -depth.
struct SingleWellPotential {
  double depth = 1.0;  // eV
  double width = 3.0;  // Angstrom
  WellShape shape = WellShape::kSquare;
  double m_star = 1.0;
  double x_min = -40.0;
  double x_max = 40.0;

  double operator()(double x) const {
    detail::check_domain(x, x_min, x_max);
    if (shape == WellShape::kSquare) return std::abs(x) < 0.5 * width ? -depth : 0.0;
    return -depth * detail::gaussian(x, 0.0, width);
  }

  /// Mean of V over [x - h/2, x + h/2]; exact for square wells, point value otherwise.
  double cell_average(double x, double h) const {
    if (shape != WellShape::kSquare) return (*this)(x);
    return -depth * detail::overlap(x - 0.5 * h, x + 0.5 * h, -0.5 * width, 0.5 * width) / h;
  }

  double minimum() const { return -depth; }

  /// V''(0) for the harmonic fit at the bottom; zero for the flat square floor.
  double bottom_curvature() const {
    if (shape == WellShape::kSquare) return 0.0;
    const double sigma = 0.5 * width;
    return depth / (sigma * sigma);
  }
};

/// Effective 1D potential of a DB pair: two wells centered at -s/2 (left) and
/// +s/2 (right). `asymmetry` raises the floor of the left well.
struct DoubleWellPotential {
  double separation = 7.68;  // center to center, Angstrom
  double well_depth = 1.0;
  double well_width = 3.0;
  double asymmetry = 0.0;
  WellShape shape = WellShape::kSquare;
  double m_star = 1.0;
  double x_min = -50.0;
  double x_max = 50.0;

  double left_center() const { return -0.5 * separation; }
  double right_center() const { return 0.5 * separation; }

  double operator()(double x) const {
    detail::check_domain(x, x_min, x_max);
    if (shape == WellShape::kSquare) {
      const double hw = 0.5 * well_width;
      double v = 0.0;
      if (std::abs(x - left_center()) < hw) v += -well_depth + asymmetry;
      if (std::abs(x - right_center()) < hw) v += -well_depth;
      return v;
    }
    return -(well_depth - asymmetry) * detail::gaussian(x, left_center(), well_width) -
           well_depth * detail::gaussian(x, right_center(), well_width);
  }

  double cell_average(double x, double h) const {
    if (shape != WellShape::kSquare) return (*this)(x);
    const double hw = 0.5 * well_width;
    const double a = x - 0.5 * h, b = x + 0.5 * h;
    return ((-well_depth + asymmetry) * detail::overlap(a, b, left_center() - hw, left_center() + hw) +
            -well_depth * detail::overlap(a, b, right_center() - hw, right_center() + hw)) /
           h;
  }

  /// The right well alone, on a domain of the same extent around its center.
  SingleWellPotential isolated_well() const {
    const double half = 0.5 * (x_max - x_min);
    return {well_depth, well_width, shape, m_star, -half, half};
  }

  void validate() const {
    if (!(well_depth > 0.0)) throw DomainError("well_depth must be > 0");
    if (!(well_width > 0.0)) throw DomainError("well_width must be > 0");
    if (!(m_star > 0.0)) throw DomainError("m_star must be > 0");
    if (asymmetry < 0.0 || asymmetry > well_depth) throw DomainError("asymmetry must lie in [0, well_depth]");
    const double reach = 0.5 * separation + 0.5 * well_width;
    if (x_min > -reach || x_max < reach) throw DomainError("wells must be contained in the domain");
  }
};

/// 1/2 m* omega^2 x^2, parameterized by hbar*omega. Used to check the solver.
struct HarmonicPotential {
  double hbar_omega = 0.1;  // eV
  double bottom = -2.0;     // eV, below the plateau so the low levels count as bound
  double m_star = 1.0;
  double x_min = -60.0;
  double x_max = 60.0;

  double operator()(double x) const {
    detail::check_domain(x, x_min, x_max);
    return bottom + hbar_omega * hbar_omega * x * x / (4.0 * units::kinetic_prefactor(m_star));
  }
};

template <class P>
double sample_cell(const P& p, double x, double h) {
  if constexpr (requires { p.cell_average(x, h); })
    return p.cell_average(x, h);
  else
    return p(x);
}

/// Symmetric domain reaching `margin` Angstrom beyond the outer well edges.
inline void fit_domain(DoubleWellPotential& pot, double margin) {
  const double reach = 0.5 * pot.separation + 0.5 * pot.well_width + margin;
  pot.x_min = -reach;
  pot.x_max = reach;
}

}  // namespace dbq::well
