#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "dbq/errors.hpp"
#include "dbq/experiments/hubbard_check.hpp"
#include "dbq/hubbard/fock_basis.hpp"
#include "dbq/hubbard/hamiltonian.hpp"
#include "dbq/hubbard/projection.hpp"

using namespace dbq;
using namespace dbq::hubbard;

namespace {

std::size_t brute_force_count(std::size_t sites, int electrons, int two_sz) {
  std::size_t n = 0;
  for (std::uint64_t st = 0; st < (std::uint64_t{1} << (2 * sites)); ++st) {
    int up = 0, dn = 0;
    for (std::size_t i = 0; i < sites; ++i) {
      up += (st >> (2 * i)) & 1U;
      dn += (st >> (2 * i + 1)) & 1U;
    }
    if (up + dn == electrons && up - dn == two_sz) ++n;
  }
  return n;
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& h) { return ground_and_spectrum(h).values; }

HubbardParams chain(std::size_t n, double t, bool ring) {
  HubbardParams p(n);
  p.e_os = -0.3;
  for (std::size_t i = 0; i < n; ++i) {
    p.u_onsite(static_cast<Eigen::Index>(i)) = 0.8;
    p.eta(static_cast<Eigen::Index>(i)) = 0.01 * static_cast<double>(i);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p.set_hopping(i, i + 1, t);
    p.set_w(i, i + 1, 0.2);
  }
  if (ring) p.set_hopping(n - 1, 0, t);
  return p;
}

// Hopping sign reversed: H(-T) = 2 H(0) - H(T).
Eigen::MatrixXd flipped(const HubbardParams& p, const FockBasis& b) {
  HubbardParams z = p;
  z.t_hop.setZero();
  return 2.0 * build_hamiltonian(z, b) - build_hamiltonian(p, b);
}

}  // namespace

TEST(FockBasis, SmallSectors) {
  EXPECT_EQ(build_basis(2, 1, 0.5).dimension(), 2U);
  EXPECT_EQ(build_basis(2, 3, 0.5).dimension(), 2U);
}

TEST(FockBasis, MatchesBruteForceCounts) {
  EXPECT_EQ(build_basis(4, 6, 1.0).dimension(), brute_force_count(4, 6, 2));
  for (std::size_t sites = 1; sites <= 5; ++sites)
    for (int ne = 0; ne <= static_cast<int>(2 * sites); ++ne)
      for (int two_sz = -ne; two_sz <= ne; two_sz += 2) {
        if ((ne + two_sz) / 2 > static_cast<int>(sites) || (ne - two_sz) / 2 > static_cast<int>(sites)) continue;
        const auto b = build_basis(sites, ne, 0.5 * two_sz);
        EXPECT_EQ(b.dimension(), brute_force_count(sites, ne, two_sz));
        auto states = b.states();
        std::sort(states.begin(), states.end());
        EXPECT_TRUE(std::adjacent_find(states.begin(), states.end()) == states.end());
      }
}

TEST(FockBasis, IncompatibleSectorThrows) {
  EXPECT_THROW(build_basis(2, 3, 0.0), DomainError);
  EXPECT_THROW(build_basis(2, 1, 1.5), DomainError);
  EXPECT_THROW(build_basis(2, 5, 0.5), DomainError);
}

TEST(FockBasis, FullBasisSize) { EXPECT_EQ(build_full_basis(3).dimension(), 64U); }

TEST(Hamiltonian, OneElectronTwoSites) {
  HubbardParams p(2);
  p.e_os = 0.4;
  p.set_hopping(0, 1, 0.1);
  const auto ev = eigenvalues(build_hamiltonian(p, build_basis(2, 1, 0.5)));
  EXPECT_NEAR(ev(0), 0.3, 1e-14);
  EXPECT_NEAR(ev(1), 0.5, 1e-14);
}

TEST(Hamiltonian, DoubleOccupancyCostsU) {
  HubbardParams p(1);
  p.e_os = -0.2;
  p.u_onsite(0) = 0.26;
  const auto h = build_hamiltonian(p, build_basis(1, 2, 0.0));
  ASSERT_EQ(h.rows(), 1);
  EXPECT_NEAR(h(0, 0), 2.0 * p.e_os + 0.26, 1e-15);
}

TEST(Hamiltonian, ThreeElectronPair) {
  HubbardParams p(2);
  p.e_os = 0.15;
  p.u_onsite.setConstant(0.26);
  p.set_hopping(0, 1, 0.1);
  p.set_w(0, 1, 0.295);
  const auto ev = eigenvalues(build_hamiltonian(p, build_basis(2, 3, 0.5)));
  ASSERT_EQ(ev.size(), 2);
  EXPECT_NEAR(ev(1) - ev(0), 0.2, 1e-14);
  EXPECT_NEAR(0.5 * (ev(0) + ev(1)), 3.0 * p.e_os + 0.26 + 2.0 * 0.295, 1e-14);
}

TEST(Hamiltonian, HermitianOnRandomSector) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  HubbardParams p(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      p.set_hopping(i, j, u(rng));
      p.set_w(i, j, u(rng));
      p.set_bias(i, j, u(rng) - 0.25);
    }
  p.u_onsite.setConstant(1.0);
  p.validate();
  const auto h = build_hamiltonian(p, build_basis(4, 4, 0.0));
  EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, ValidateRejectsBadInput) {
  HubbardParams p(2);
  p.t_hop(0, 1) = 0.1;
  EXPECT_THROW(p.validate(), StructuralError);
  p.set_hopping(0, 1, -0.1);
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(HoppingGauge, SpectrumUnchangedOnChains) {
  for (std::size_t n : {2U, 3U, 4U}) {
    const auto p = chain(n, 0.15, false);
    const auto b = build_basis(n, static_cast<int>(n), n % 2 ? 0.5 : 0.0);
    const auto a = eigenvalues(build_hamiltonian(p, b));
    const auto f = eigenvalues(flipped(p, b));
    EXPECT_LT((a - f).cwiseAbs().maxCoeff(), 1e-12) << "n = " << n;
  }
}

TEST(HoppingGauge, EvenRingIsBipartite) {
  const auto p = chain(4, 0.15, true);
  const auto b = build_basis(4, 3, 0.5);
  EXPECT_LT((eigenvalues(build_hamiltonian(p, b)) - eigenvalues(flipped(p, b))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HoppingGauge, OddRingIsNotBipartite) {
  const auto p = chain(3, 0.15, true);
  const auto b = build_basis(3, 1, 0.5);
  EXPECT_GT((eigenvalues(build_hamiltonian(p, b)) - eigenvalues(flipped(p, b))).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Spectrum, DiagonalAndTwoByTwo) {
  Eigen::MatrixXd d = Eigen::Vector3d(0.3, -1.0, 0.1).asDiagonal();
  const auto ev = eigenvalues(d);
  EXPECT_DOUBLE_EQ(ev(0), -1.0);
  EXPECT_DOUBLE_EQ(ev(1), 0.1);
  EXPECT_DOUBLE_EQ(ev(2), 0.3);
  Eigen::MatrixXd h(2, 2);
  h << 0.0, -0.07, -0.07, 0.0;
  const auto e2 = eigenvalues(h);
  EXPECT_NEAR(e2(0), -0.07, 1e-15);
  EXPECT_NEAR(e2(1), 0.07, 1e-15);
}

TEST(Spectrum, RandomResidualAndCubicOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(50, 50);
  for (Eigen::Index i = 0; i < 50; ++i)
    for (Eigen::Index j = 0; j < 50; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
  const auto s = ground_and_spectrum(h);
  EXPECT_LE(max_relative_residual(h, s), 1e-10);
  for (Eigen::Index i = 1; i < 50; ++i) EXPECT_LE(s.values(i - 1), s.values(i));

  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
    m = 0.5 * (m + m.transpose()).eval();
    // Trigonometric roots of the characteristic cubic of a real symmetric 3x3.
    const double q = m.trace() / 3.0;
    const Eigen::Matrix3d b = m - q * Eigen::Matrix3d::Identity();
    const double p = std::sqrt(b.squaredNorm() / 6.0);
    const double r = std::clamp((b / p).determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    std::array<double, 3> roots{q + 2.0 * p * std::cos(phi), q + 2.0 * p * std::cos(phi + 2.0 * units::kPi / 3.0), 0.0};
    roots[2] = 3.0 * q - roots[0] - roots[1];
    std::sort(roots.begin(), roots.end());
    const auto ev = eigenvalues(Eigen::MatrixXd(m));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev(k), roots[static_cast<std::size_t>(k)], 1e-12);
  }
}

TEST(Spectrum, CapacityLimit) {
  EXPECT_THROW(ground_and_spectrum(Eigen::MatrixXd::Zero(4097, 4097)), CapacityError);
}

namespace {

DeviceLayout pairs_layout(std::size_t n) {
  DeviceLayout l;
  for (std::size_t k = 0; k < n; ++k) {
    l.sites.push_back({0.0, 20.0 * static_cast<double>(k)});
    l.sites.push_back({7.0, 20.0 * static_cast<double>(k)});
    l.pairs.push_back({2 * k, 2 * k + 1});
  }
  return l;
}

}  // namespace

TEST(Projection, SymmetricPairHasPureX) {
  HubbardParams p(2);
  p.e_os = 0.2;
  p.u_onsite.setConstant(0.6);
  p.set_hopping(0, 1, 0.044);
  p.set_w(0, 1, 0.3);
  const auto c = project_to_qubits(p, pairs_layout(1));
  EXPECT_NEAR(std::abs(c.pauli.x[0]), 0.044, 1e-14);
  EXPECT_NEAR(c.pauli.z[0], 0.0, 1e-14);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(Projection, BiasGivesHalfTilt) {
  HubbardParams p(2);
  p.u_onsite.setConstant(0.6);
  p.set_hopping(0, 1, 0.05);
  p.set_bias(0, 1, 0.3);
  const auto c = project_to_qubits(p, pairs_layout(1));
  EXPECT_NEAR(c.pauli.z[0], 0.15, 1e-14);
}

TEST(Projection, TwoPairsZzAndIdentity) {
  HubbardParams p(4);
  p.e_os = 0.1;
  p.u_onsite.setConstant(0.5);
  p.set_hopping(0, 1, 0.05);
  p.set_hopping(2, 3, 0.05);
  p.set_w(0, 1, 0.25);
  p.set_w(2, 3, 0.25);
  p.set_w(0, 2, 0.3);
  p.set_w(1, 3, 0.3);
  p.set_w(0, 3, 0.2);
  p.set_w(1, 2, 0.2);
  const auto c = project_to_qubits(p, pairs_layout(2));
  EXPECT_NEAR(c.pauli.zz_at(0, 1), 0.05, 1e-14);
  const double kappa = 2.0 * (3.0 * 0.1 + 0.5 + 2.0 * 0.25) + 4.5 * (0.3 + 0.2);
  EXPECT_NEAR(c.pauli.identity, kappa, 1e-13);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(Projection, InterPairHoppingRejected) {
  HubbardParams p(4);
  p.set_hopping(0, 1, 0.05);
  p.set_hopping(2, 3, 0.05);
  p.set_hopping(1, 2, 0.01);
  EXPECT_THROW(project_to_qubits(p, pairs_layout(2)), ProjectionError);
}

TEST(Projection, UnpairedSiteRejected) {
  auto l = pairs_layout(1);
  l.sites.push_back({30.0, 0.0});
  HubbardParams p(3);
  EXPECT_THROW(project_to_qubits(p, l), StructuralError);
}

TEST(Projection, SiteOrderDoesNotMatter) {
  // Pairs listed out of site order still project onto the same coefficients.
  std::mt19937_64 rng(3);
  auto d = experiments::random_draw(2, rng);
  const auto ref = project_to_qubits(d.hubbard, d.layout);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  HubbardParams q = permute_sites(d.hubbard, perm);
  DeviceLayout l = d.layout;
  std::vector<std::size_t> inv(4);
  for (std::size_t i = 0; i < 4; ++i) inv[perm[i]] = i;
  for (auto& pr : l.pairs) pr = {inv[pr.left], inv[pr.right]};
  std::vector<Site> sites(4);
  for (std::size_t i = 0; i < 4; ++i) sites[i] = d.layout.sites[perm[i]];
  l.sites = sites;
  const auto c = project_to_qubits(q, l);
  EXPECT_LT((c.restricted - ref.restricted).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Projection, RandomDrawsMatchClosedForm) {
  std::mt19937_64 rng(2024);
  for (std::size_t pairs : {1U, 2U}) {
    for (bool asym : {false, true}) {
      if (pairs == 1 && asym) continue;
      std::size_t row = 0;
      const auto s = experiments::hubbard_batch(pairs, 100, rng, asym, nullptr, row);
      EXPECT_LE(s.x, 1e-10);
      EXPECT_LE(s.z, 1e-10);
      EXPECT_LE(s.zz, 1e-10);
      EXPECT_LE(s.identity, 1e-10);
      EXPECT_LE(s.matrix, 1e-10);
      EXPECT_LE(s.residual, 1e-12);
    }
  }
}
