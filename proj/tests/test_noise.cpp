#include <gtest/gtest.h>

#include <cmath>

#include "dbq/errors.hpp"
#include "dbq/noise/drift.hpp"
#include "dbq/noise/phonon.hpp"
#include "dbq/well/calibration.hpp"

using namespace dbq;
using namespace dbq::noise;

namespace {

// Same golden-rule expression, evaluated independently in SI.
double reference_rate(double xi_ev, double rho, double c, double a_ang, double e_ev, double s_ang) {
  const double e = 1.602176634e-19, hbar = 1.054571817e-34, pi = 3.14159265358979323846;
  const double w = e_ev * e / hbar, q = w / c, s = s_ang * 1e-10, a = a_ang * 1e-10;
  const double pre = std::pow(xi_ev * e, 2) * w * w * w / (4.0 * pi * pi * rho * hbar * std::pow(c, 5));
  return pre * (1.0 - std::sin(q * s) / (q * s)) * std::exp(-q * q * a * a / 2.0);
}

}  // namespace

TEST(Phonon, MatchesReferenceEvaluation) {
  for (double e : {0.0015, 0.002, 0.01, 0.05})
    for (double s : {3.84, 7.68, 15.36, 20.0}) {
      PhononModel m;
      m.phonon_energy = e;
      const double ref = reference_rate(8.8, 2329.0, 8433.0, 2.0, e, s);
      EXPECT_NEAR(phonon_rate(m, s) / ref, 1.0, 1e-9) << e << " " << s;
    }
}

TEST(Phonon, DefaultGivesNanosecondRelaxation) {
  const double g = phonon_rate(PhononModel{}, 7.68);
  EXPECT_GE(g, 1e8);
  EXPECT_LE(g, 1e9);
}

TEST(Phonon, TwoMevEvaluationPoint) {
  // Regression pin for the 2 meV evaluation point: 0.58 ns, just outside the nanosecond window.
  PhononModel m;
  m.phonon_energy = 0.002;
  EXPECT_NEAR(1e9 / phonon_rate(m, 7.68), 0.58, 0.01);
}

TEST(Phonon, VanishesAtZeroSeparation) {
  EXPECT_EQ(phonon_rate(PhononModel{}, 0.0), 0.0);
  EXPECT_LT(phonon_rate(PhononModel{}, 1e-4), 1e-6 * phonon_rate(PhononModel{}, 7.68));
}

TEST(Phonon, RatioAcrossSweepBelowTen) {
  const PhononModel m;
  const auto cw = well::calibrate(well::WellSettings{});
  EXPECT_GE(cw.fd_splitting(3.84) / cw.fd_splitting(15.36), 1e3);
  EXPECT_LT(phonon_rate(m, 15.36) / phonon_rate(m, 3.84), 10.0);
}

TEST(Phonon, DeformationPotentialScalesQuadratically) {
  PhononModel a, b;
  b.deformation_potential = 2.0 * a.deformation_potential;
  EXPECT_NEAR(phonon_rate(b, 7.68) / phonon_rate(a, 7.68), 4.0, 1e-12);
}

TEST(Phonon, ContinuousAndNonNegative) {
  const PhononModel m;
  double prev = phonon_rate(m, 0.0);
  for (double s = 0.001; s <= 20.0; s += 0.001) {
    const double g = phonon_rate(m, s);
    EXPECT_GE(g, 0.0);
    EXPECT_LT(std::abs(g - prev), 1e-3 * phonon_rate(m, 20.0) + 1e-300);
    prev = g;
  }
}

TEST(Phonon, SmallFrequencyExponentIsFive) {
  PhononModel m;
  auto rate_at = [&](double e) {
    m.phonon_energy = e;
    return phonon_rate(m, 3.84);
  };
  const double lo = 1e-6, hi = 1e-4;
  const double slope = std::log(rate_at(hi) / rate_at(lo)) / std::log(hi / lo);
  EXPECT_NEAR(slope / 5.0, 1.0, 0.02);
}

TEST(Phonon, EnergyAboveDebyeRejected) {
  PhononModel m;
  m.phonon_energy = 0.06;
  EXPECT_FALSE(m.violations().empty());
  EXPECT_THROW(phonon_rate(m, 7.68), DomainError);
  m.phonon_energy = m.debye_energy;
  EXPECT_GT(phonon_rate(m, 7.68), 0.0);
}

TEST(Phonon, InvalidParameters) {
  PhononModel m;
  m.density = -1.0;
  EXPECT_THROW(phonon_rate(m, 7.68), DomainError);
  EXPECT_THROW(phonon_rate(PhononModel{}, -1.0), DomainError);
}

TEST(Drift, ExponentialValues) {
  const DriftModel m;
  EXPECT_DOUBLE_EQ(drift_bias(m, 0.0), 0.5);
  EXPECT_NEAR(drift_bias(m, m.tau_relax), 0.5 / std::exp(1.0), 1e-15);
  EXPECT_NEAR(0.5 / std::exp(1.0), 0.1839, 1e-4);
  EXPECT_EQ(drift_bias(m, 1e12), 0.0);
  EXPECT_THROW(drift_bias(m, -1.0), DomainError);
}

TEST(Drift, MonotoneConvexSemigroup) {
  const DriftModel m;
  for (double t = 0.0; t < 5e6; t += 1.7e5) {
    const double h = 1e4;
    EXPECT_GT(drift_bias(m, t), drift_bias(m, t + h));
    EXPECT_GE(drift_bias(m, t) + drift_bias(m, t + 2 * h), 2.0 * drift_bias(m, t + h));
    const double t2 = 0.37 * t + 1e3;
    EXPECT_NEAR(drift_bias(m, t + t2) * m.eta0 / (drift_bias(m, t) * drift_bias(m, t2)), 1.0, 1e-12);
  }
}

TEST(Drift, DecoherenceEstimate) {
  DriftModel m;
  EXPECT_NEAR(drift_decoherence_estimate(m, 0.5 * 0.3077), 0.6582119569e-6 / 0.3077, 1e-15);
  EXPECT_NEAR(drift_decoherence_estimate(m, 0.5 * 0.3077), 2.1e-6, 0.05e-6);
  DriftModel slow{0.5, 2e6};
  EXPECT_NEAR(drift_decoherence_estimate(m, 0.05) / drift_decoherence_estimate(slow, 0.05), 2.0, 1e-12);
  DriftModel frozen{0.5, 1e300};
  EXPECT_LT(drift_decoherence_estimate(frozen, 0.05), 1e-290);
  EXPECT_THROW(drift_decoherence_estimate(m, 0.0), DomainError);
}
