#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dbq/errors.hpp"

namespace dbq {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool multistart = false;  // sampling found more than one local minimum
  std::string note;
};

/// Golden-section search on [a, b]. The bracket shrinks by 1/phi per
/// iteration until it is narrower than `tol`; the midpoint of the final
/// bracket is returned. Assumes f is unimodal on [a, b].
template <class F>
ScalarMinimum golden_section(F&& f, double a, double b, double tol) {
  if (!(b > a)) throw DomainError("golden_section: bracket must satisfy a < b");
  if (!(tol > 0.0)) throw DomainError("golden_section: tolerance must be positive");
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  ScalarMinimum out;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  out.evaluations = 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  out.argmin = 0.5 * (a + b);
  out.value = f(out.argmin);
  ++out.evaluations;
  return out;
}

/// Golden-section minimization guarded by a coarse scan. The objective is
/// sampled at `samples` evenly spaced points; a single interior (or edge)
/// local minimum means an ordinary golden-section search on the whole
/// bracket, several mean one search per candidate sub-bracket and the best
/// result wins. Deterministic for deterministic f.
template <class F>
ScalarMinimum minimize_scalar(F&& f, double a, double b, double tol, std::size_t samples = 17) {
  if (!(b > a)) throw DomainError("minimize_scalar: bracket must satisfy a < b");
  if (samples < 3) samples = 3;
  std::vector<double> xs(samples), fs(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    fs[i] = f(xs[i]);
  }
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < samples; ++i) {
    const bool left_ok = i == 0 || fs[i] < fs[i - 1];
    const bool right_ok = i + 1 == samples || fs[i] <= fs[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  if (minima.size() <= 1) {
    auto r = golden_section(f, a, b, tol);
    r.evaluations += samples;
    return r;
  }
  ScalarMinimum best;
  best.value = INFINITY;
  std::size_t evals = samples;
  for (std::size_t i : minima) {
    const double lo = xs[i == 0 ? 0 : i - 1];
    const double hi = xs[i + 1 == samples ? i : i + 1];
    auto r = golden_section(f, lo, hi, tol);
    evals += r.evaluations;
    if (r.value < best.value) best = r;
  }
  best.evaluations = evals;
  best.multistart = true;
  best.note = "objective not unimodal on the bracket: " + std::to_string(minima.size()) +
              " sampled local minima, best of per-candidate searches returned";
  return best;
}

}  // namespace dbq
