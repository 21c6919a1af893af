#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "dbq/errors.hpp"
#include "dbq/layout.hpp"
#include "dbq/material.hpp"
#include "dbq/noise/drift.hpp"
#include "dbq/noise/phonon.hpp"
#include "dbq/units.hpp"
#include "dbq/well/calibration.hpp"

namespace dbq::io {

using json = nlohmann::ordered_json;

struct QubitSection {
  std::string splitting_source = "explicit";  // explicit | calibrated_well
  double splitting_ev = 0.0887;
  std::string zz_convention = "projected";    // projected | full
  double e_os = 0.0;
  double eta = 0.0;
  std::optional<double> u0;                   // default: charged minus neutral level
};

struct PulsesSection {
  double rabi_duration_fs = 1.5e6;
  std::optional<double> init_tilt_ev;    // default 20 T
  std::optional<double> cphase_tilt_ev;  // default max(20 T, 4 |c|)
  double cphase_phi = units::kPi;
};

struct NoiseSection {
  double dephasing_rate_hz = 1e9;
  double relaxation_rate_hz = 1e9;
  bool drift_enabled = false;
  double drift_eta0 = 0.5;
  double drift_tau_fs = 1e6;
  double drift_slice_fs = 500.0;
  double phonon_envelope_radius = 2.0;
  double phonon_energy = 0.0015;
  double phonon_debye_energy = 0.055;
  double readout_error = 0.0;
};

struct RunSection {
  std::uint64_t seed = 1;
  std::uint64_t shots = 1000000;
  std::optional<double> dt_fs;  // default: half the step-contract limit
  double sweep_min = 3.84;
  double sweep_max = 20.0;
  double sweep_step = 0.5;
  std::uint64_t draws = 100;
  std::string readout_state = "1";  // 0 | 1 | + | -
  std::uint64_t rabi_dense_periods = 100;
  std::uint64_t rabi_windows = 60;
  std::uint64_t samples_per_period = 32;
  double init_chunk_fs = 1e6;
  double init_max_fs = 5e7;
  double init_plateau_tol = 1e-5;
  bool dump_hamiltonian = false;
};

struct Config {
  MaterialParams material;
  well::WellSettings well;
  DeviceLayout layout = default_layout();
  QubitSection qubit;
  PulsesSection pulses;
  NoiseSection noise;
  RunSection run;

  /// Two parallel pairs 7.72 Angstrom wide, 17 Angstrom apart.
  static DeviceLayout default_layout() {
    DeviceLayout l;
    l.sites = {{0.0, 0.0}, {7.72, 0.0}, {0.0, 17.0}, {7.72, 17.0}};
    l.pairs = {{0, 1}, {2, 3}};
    return l;
  }

  noise::PhononModel phonon() const {
    auto p = noise::PhononModel::from_material(material);
    p.envelope_radius = noise.phonon_envelope_radius;
    p.phonon_energy = noise.phonon_energy;
    p.debye_energy = noise.phonon_debye_energy;
    return p;
  }

  noise::DriftModel drift() const { return {noise.drift_eta0, noise.drift_tau_fs}; }
};

template <class F>
void fields(MaterialParams& m, F&& f) {
  f("band_gap", m.band_gap);
  f("neutral_db_level", m.neutral_db_level);
  f("charged_db_level", m.charged_db_level);
  f("onsite_shift", m.onsite_shift);
  f("lattice_displacement", m.lattice_displacement);
  f("effective_mass_ratio", m.effective_mass_ratio);
  f("eps_surface", m.eps_surface);
  f("density", m.density);
  f("sound_speed_l", m.sound_speed_l);
  f("deformation_potential", m.deformation_potential);
}

template <class F>
void fields(well::WellSettings& w, F&& f) {
  f("shape", w.shape);
  f("width", w.width);
  f("m_star", w.m_star);
  f("target_level", w.target_level);
  f("fit_width", w.fit_width);
  f("grid_spacing", w.grid_spacing);
  f("margin_decay_lengths", w.margin_decay_lengths);
}

template <class F>
void fields(QubitSection& q, F&& f) {
  f("splitting_source", q.splitting_source);
  f("splitting_ev", q.splitting_ev);
  f("zz_convention", q.zz_convention);
  f("e_os", q.e_os);
  f("eta", q.eta);
  f("u0", q.u0);
}

template <class F>
void fields(PulsesSection& p, F&& f) {
  f("rabi_duration_fs", p.rabi_duration_fs);
  f("init_tilt_ev", p.init_tilt_ev);
  f("cphase_tilt_ev", p.cphase_tilt_ev);
  f("cphase_phi", p.cphase_phi);
}

template <class F>
void fields(NoiseSection& n, F&& f) {
  f("dephasing_rate_hz", n.dephasing_rate_hz);
  f("relaxation_rate_hz", n.relaxation_rate_hz);
  f("drift_enabled", n.drift_enabled);
  f("drift_eta0", n.drift_eta0);
  f("drift_tau_fs", n.drift_tau_fs);
  f("drift_slice_fs", n.drift_slice_fs);
  f("phonon_envelope_radius", n.phonon_envelope_radius);
  f("phonon_energy", n.phonon_energy);
  f("phonon_debye_energy", n.phonon_debye_energy);
  f("readout_error", n.readout_error);
}

template <class F>
void fields(RunSection& r, F&& f) {
  f("seed", r.seed);
  f("shots", r.shots);
  f("dt_fs", r.dt_fs);
  f("sweep_min", r.sweep_min);
  f("sweep_max", r.sweep_max);
  f("sweep_step", r.sweep_step);
  f("draws", r.draws);
  f("readout_state", r.readout_state);
  f("rabi_dense_periods", r.rabi_dense_periods);
  f("rabi_windows", r.rabi_windows);
  f("samples_per_period", r.samples_per_period);
  f("init_chunk_fs", r.init_chunk_fs);
  f("init_max_fs", r.init_max_fs);
  f("init_plateau_tol", r.init_plateau_tol);
  f("dump_hamiltonian", r.dump_hamiltonian);
}

namespace detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

template <class T>
void read_value(const json& j, const std::string& path, T& out) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) throw ConfigError(path, "expected a number");
      out = j.get<double>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
      out = j.get<bool>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ConfigError(path, "expected a non-negative integer");
      out = j.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) throw ConfigError(path, "expected a string");
      out = j.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      if (j.is_null()) {
        out.reset();
      } else {
        double v = 0.0;
        read_value(j, path, v);
        out = v;
      }
    } else if constexpr (std::is_same_v<T, well::WellShape>) {
      if (!j.is_string()) throw ConfigError(path, "expected \"square\" or \"gaussian\"");
      out = well::parse_shape(j.get<std::string>());
    } else {
      static_assert(sizeof(T) == 0, "unsupported config field type");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

template <class T>
json write_value(const T& v) {
  if constexpr (std::is_same_v<T, std::optional<double>>) {
    return v ? json(*v) : json(nullptr);
  } else if constexpr (std::is_same_v<T, well::WellShape>) {
    return json(well::to_string(v));
  } else {
    return json(v);
  }
}

template <class Section>
void read_section(const json& j, const std::string& path, Section& s) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  std::set<std::string> known;
  fields(s, [&](const char* key, auto& field) {
    known.insert(key);
    if (auto it = j.find(key); it != j.end()) read_value(*it, join(path, key), field);
  });
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(join(path, it.key()), "unknown key");
}

template <class Section>
json write_section(Section s) {
  json out = json::object();
  fields(s, [&](const char* key, auto& field) { out[key] = write_value(field); });
  return out;
}

inline DeviceLayout read_layout(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "sites" && it.key() != "pairs") throw ConfigError(join(path, it.key()), "unknown key");
  if (!j.contains("sites") || !j.contains("pairs")) throw ConfigError(path, "requires both sites and pairs");
  DeviceLayout l;
  const auto& sites = j.at("sites");
  if (!sites.is_array()) throw ConfigError(path + ".sites", "expected an array of [x, y]");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& s = sites[i];
    const std::string p = path + ".sites[" + std::to_string(i) + "]";
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
      throw ConfigError(p, "expected [x, y] in Angstrom");
    l.sites.push_back({s[0].get<double>(), s[1].get<double>()});
  }
  const auto& pairs = j.at("pairs");
  if (!pairs.is_array()) throw ConfigError(path + ".pairs", "expected an array of [left, right]");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pr = pairs[i];
    const std::string p = path + ".pairs[" + std::to_string(i) + "]";
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_unsigned() || !pr[1].is_number_unsigned())
      throw ConfigError(p, "expected [left, right] site indices");
    l.pairs.push_back({pr[0].get<std::size_t>(), pr[1].get<std::size_t>()});
  }
  try {
    (void)l.pair_membership();
  } catch (const std::exception& e) {
    throw ConfigError(path + ".pairs", e.what());
  }
  return l;
}

inline json write_layout(const DeviceLayout& l) {
  json sites = json::array(), pairs = json::array();
  for (const auto& s : l.sites) sites.push_back({s.x, s.y});
  for (const auto& p : l.pairs) pairs.push_back({p.left, p.right});
  return {{"sites", sites}, {"pairs", pairs}};
}

inline json* locate(json& root, const std::string& dotted, std::string& leaf) {
  json* node = &root;
  std::string path;
  std::istringstream in(dotted);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, '.')) parts.push_back(part);
  if (parts.size() < 2) throw ConfigError(dotted, "override key must be section.field");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    path = join(path, parts[i]);
    if (!node->is_object() || !node->contains(parts[i])) throw ConfigError(path, "unknown key");
    node = &(*node)[parts[i]];
  }
  leaf = parts.back();
  if (!node->is_object() || !node->contains(leaf)) throw ConfigError(dotted, "unknown key");
  return node;
}

}  // namespace detail

inline json to_json(const Config& c) {
  json j = json::object();
  j["material"] = detail::write_section(c.material);
  j["well"] = detail::write_section(c.well);
  j["layout"] = detail::write_layout(c.layout);
  j["qubit"] = detail::write_section(c.qubit);
  j["pulses"] = detail::write_section(c.pulses);
  j["noise"] = detail::write_section(c.noise);
  j["run"] = detail::write_section(c.run);
  return j;
}

/// Missing keys keep their defaults; unknown keys are rejected with their
/// full path.
inline Config from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  Config c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k == "material") detail::read_section(*it, k, c.material);
    else if (k == "well") detail::read_section(*it, k, c.well);
    else if (k == "layout") c.layout = detail::read_layout(*it, k);
    else if (k == "qubit") detail::read_section(*it, k, c.qubit);
    else if (k == "pulses") detail::read_section(*it, k, c.pulses);
    else if (k == "noise") detail::read_section(*it, k, c.noise);
    else if (k == "run") detail::read_section(*it, k, c.run);
    else throw ConfigError(k, "unknown section");
  }
  return c;
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin, std::string("parse error: ") + e.what());
  }
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(parse_text(buf.str(), path));
}

/// Applies `section.field=value` overrides. The value is read as JSON when it
/// parses, otherwise as a bare string.
inline Config apply_overrides(const Config& base, const std::vector<std::string>& overrides) {
  json j = to_json(base);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(o, "override must look like key=value");
    const std::string key = o.substr(0, eq), text = o.substr(eq + 1);
    std::string leaf;
    json* parent = detail::locate(j, key, leaf);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    (*parent)[leaf] = value;
  }
  return from_json(j);
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string config_hash(const Config& c) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << fnv1a(to_json(c).dump());
  return out.str();
}

}  // namespace dbq::io
