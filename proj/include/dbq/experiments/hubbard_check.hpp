#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dbq/dynamics/measure.hpp"
#include "dbq/experiments/common.hpp"
#include "dbq/hubbard/projection.hpp"
#include "dbq/qubit/hq.hpp"

namespace dbq::experiments {

/// One random draw of uniform intra-pair parameters with mirror-symmetric
/// inter-pair repulsion, in both representations.
struct HubbardDraw {
  hubbard::HubbardParams hubbard;
  qubit::QubitParams qubit;
  std::vector<double> deltav;
  DeviceLayout layout;
};

inline HubbardDraw random_draw(std::size_t n_pairs, std::mt19937_64& rng, bool asymmetric = false) {
  auto u = [&](double lo, double hi) { return lo + (hi - lo) * dynamics::uniform01(rng); };
  HubbardDraw d{hubbard::HubbardParams(2 * n_pairs), qubit::QubitParams(n_pairs), {}, {}};
  for (std::size_t k = 0; k < n_pairs; ++k) {
    d.layout.sites.push_back({0.0, 20.0 * static_cast<double>(k)});
    d.layout.sites.push_back({7.0, 20.0 * static_cast<double>(k)});
    d.layout.pairs.push_back({2 * k, 2 * k + 1});
  }
  auto& h = d.hubbard;
  auto& q = d.qubit;
  h.e_os = u(-1.0, 1.0);
  const double eta = u(-0.2, 0.2), U = u(0.1, 1.0), w0 = u(0.05, 0.5), t = u(0.01, 0.3);
  for (std::size_t i = 0; i < h.n_sites; ++i) {
    h.eta(static_cast<Eigen::Index>(i)) = eta;
    h.u_onsite(static_cast<Eigen::Index>(i)) = U;
  }
  q.t_tunnel = t;
  q.e_os = h.e_os;
  q.eta = eta;
  q.u0 = U;
  q.w0 = w0;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    h.set_hopping(2 * k, 2 * k + 1, t);
    h.set_w(2 * k, 2 * k + 1, w0);
    const double dv = u(-0.5, 0.5);
    h.set_bias(2 * k, 2 * k + 1, dv);
    d.deltav.push_back(dv);
  }
  for (std::size_t a = 0; a < n_pairs; ++a) {
    for (std::size_t b = a + 1; b < n_pairs; ++b) {
      const double same = u(0.02, 0.4), cross = u(0.02, 0.4);
      const double ll = asymmetric ? u(0.02, 0.4) : same, rr = asymmetric ? u(0.02, 0.4) : same;
      const double lr = asymmetric ? u(0.02, 0.4) : cross, rl = asymmetric ? u(0.02, 0.4) : cross;
      h.set_w(2 * a, 2 * b, ll);
      h.set_w(2 * a + 1, 2 * b + 1, rr);
      h.set_w(2 * a, 2 * b + 1, lr);
      h.set_w(2 * a + 1, 2 * b, rl);
      q.set_coupling(a, b, 0.5 * (ll + rr), 0.5 * (lr + rl));
      q.z_static[a] += 0.75 * (ll - rr + lr - rl);
      q.z_static[b] += 0.75 * (ll - rr + rl - lr);
    }
  }
  return d;
}

/// Maximum deviations over a batch of draws.
struct HubbardCheckStats {
  std::size_t draws = 0;
  double x = 0.0, z = 0.0, zz = 0.0, identity = 0.0, matrix = 0.0, residual = 0.0;
  double zz_ratio_to_w_minus = 0.0;  // last draw, two pairs only
};

inline HubbardCheckStats hubbard_batch(std::size_t n_pairs, std::size_t draws, std::mt19937_64& rng, bool asymmetric,
                                       io::CsvWriter* csv, std::size_t& row_id) {
  HubbardCheckStats s;
  s.draws = draws;
  for (std::size_t k = 0; k < draws; ++k) {
    const auto d = random_draw(n_pairs, rng, asymmetric);
    const auto pr = hubbard::project_to_qubits(d.hubbard, d.layout);
    const auto hq = qubit::hq_coefficients(d.qubit, d.deltav);
    auto log = [&](const std::string& name, double got, double want) {
      if (csv)
        csv->row({std::to_string(row_id), std::to_string(n_pairs), name, fmt(got), fmt(want), fmt(std::abs(got - want))});
      return std::abs(got - want);
    };
    for (std::size_t q = 0; q < n_pairs; ++q) {
      s.x = std::max(s.x, log("x_q" + std::to_string(q), std::abs(pr.pauli.x[q]), d.qubit.t_tunnel));
      const double want_z = asymmetric ? hq.z[q] : 0.5 * d.deltav[q];
      s.z = std::max(s.z, log("z_q" + std::to_string(q), pr.pauli.z[q], want_z));
    }
    for (std::size_t a = 0; a < n_pairs; ++a)
      for (std::size_t b = a + 1; b < n_pairs; ++b) {
        const double want = 0.5 * d.qubit.w_minus(a, b);
        s.zz = std::max(s.zz, log("zz_q" + std::to_string(a) + std::to_string(b), pr.pauli.zz_at(a, b), want));
        if (d.qubit.w_minus(a, b) != 0.0) s.zz_ratio_to_w_minus = pr.pauli.zz_at(a, b) / d.qubit.w_minus(a, b);
      }
    s.identity = std::max(s.identity, log("identity", pr.pauli.identity, d.qubit.kappa()));
    s.matrix = std::max(s.matrix, (pr.restricted - hq.matrix()).cwiseAbs().maxCoeff());
    s.residual = std::max(s.residual, pr.residual);
    ++row_id;
  }
  return s;
}

inline void write_triplets(const std::filesystem::path& path, const Eigen::MatrixXd& h) {
  io::CsvWriter csv(path, {"row", "col", "value_ev"});
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0.0) csv.row({std::to_string(i), std::to_string(j), fmt(h(i, j))});
}

inline Outcome run_hubbard_check(const ExperimentSpec& spec) {
  const auto& cfg = spec.config;
  Outcome out;
  auto& rep = out.report;
  rep.kv("scenario", "hubbard-check").kv("seed", spec.seed).kv("config_hash", io::config_hash(cfg));
  const std::size_t draws = cfg.run.draws;
  if (draws == 0) throw ConfigError("run.draws", "must be >= 1");

  std::mt19937_64 rng(spec.seed);
  std::size_t row_id = 0;
  io::CsvWriter csv(spec.out_dir / "hubbard_check.csv",
                    {"draw", "pairs", "coefficient", "projected_ev", "expected_ev", "abs_diff_ev"});
  out.outputs.push_back("hubbard_check.csv");
  const auto one = hubbard_batch(1, draws, rng, false, &csv, row_id);
  const auto two = hubbard_batch(2, draws, rng, false, &csv, row_id);
  const auto asym = hubbard_batch(2, draws, rng, true, &csv, row_id);

  constexpr double tol = 1e-10;
  auto section = [&](const char* name, const HubbardCheckStats& s) {
    rep.section(name);
    rep.kv("draws", static_cast<std::uint64_t>(s.draws)).kv("max_dev_x", s.x).kv("max_dev_z", s.z);
    rep.kv("max_dev_zz", s.zz).kv("max_dev_identity", s.identity).kv("max_dev_matrix", s.matrix);
    rep.kv("max_residual", s.residual);
    const std::string tag(name);
    rep.check(tag + "_x_equals_t", s.x <= tol, fmt(s.x));
    rep.check(tag + "_z_equals_half_dv", s.z <= tol, fmt(s.z));
    rep.check(tag + "_zz_equals_half_w_minus", s.zz <= tol, fmt(s.zz));
    rep.check(tag + "_identity_equals_kappa", s.identity <= tol, fmt(s.identity));
    rep.check(tag + "_matches_build_hq", s.matrix <= tol, fmt(s.matrix));
    rep.check(tag + "_residual", s.residual <= 1e-12, fmt(s.residual));
  };
  section("one_pair", one);
  section("two_pairs", two);
  section("two_pairs_asymmetric", asym);

  rep.section("zz_convention");
  rep.kv("projected_zz_over_w_minus", two.zz_ratio_to_w_minus);
  rep.kv("finding", "the three-electron projection gives W-/2; the operator sum as printed uses W-");
  rep.kv("x_sign_gauge", "+T with sites ordered pair by pair (L0 R0 L1 R1 ...)");

  if (cfg.run.dump_hamiltonian) {
    std::mt19937_64 dump_rng(spec.seed);
    const auto d = random_draw(2, dump_rng);
    const auto order = hubbard::pair_major_order(d.layout);
    const auto hp = hubbard::permute_sites(d.hubbard, order);
    const auto basis = hubbard::build_basis(4, 6, 1.0);
    write_triplets(spec.out_dir / "hubbard_hamiltonian.csv", hubbard::build_hamiltonian(hp, basis));
    out.outputs.push_back("hubbard_hamiltonian.csv");
  }
  write_report(spec.out_dir, "hubbard_check_report.txt", rep, out);
  return out;
}

}  // namespace dbq::experiments
