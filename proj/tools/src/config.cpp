// Copyright 2026 The qsector Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qsector/errors.hpp"

namespace qsector::cli {
namespace {

using nlohmann::json;

json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return out;
    }
    case YAML::NodeType::Scalar:
      break;
  }
  const std::string text = node.Scalar();
  if (node.Tag() == "!" || node.Tag() == "tag:yaml.org,2002:str") return text;
  long long integer = 0;
  if (YAML::convert<long long>::decode(node, integer)) return integer;
  double real = 0.0;
  if (YAML::convert<double>::decode(node, real)) return real;
  bool flag = false;
  if (YAML::convert<bool>::decode(node, flag)) return flag;
  return text;
}

// Reads an optional field, reporting type errors with the dotted path.
template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

const json& section(const json& root, const char* key) {
  static const json empty = json::object();
  if (!root.contains(key) || root.at(key).is_null()) return empty;
  if (!root.at(key).is_object()) throw ConfigError(std::string(key) + " must be a mapping");
  return root.at(key);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key " + where + "." + key);
  }
}

Complex parse_amplitude(const json& a, const std::string& where) {
  if (a.is_number()) return {a.get<double>(), 0.0};
  if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
    return {a[0].get<double>(), a[1].get<double>()};
  }
  throw ConfigError(where + ": amplitude must be a number or [re, im]");
}

// Amplitude list, zero-padded to the local dimension and normalized.
SiteState parse_state(const json& a, int dim, const std::string& where) {
  if (!a.is_array() || a.empty()) throw ConfigError(where + ": state must be a non-empty list");
  if (static_cast<int>(a.size()) > dim) {
    throw ConfigError(where + ": state has " + std::to_string(a.size()) +
                      " amplitudes but n_max allows " + std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_amplitude(a[i], where);
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError(where + ": state has zero norm");
  return {v / n};
}

GridIndex parse_site(const json& s, const std::string& where) {
  if (s.is_number_integer()) return {s.get<int>(), 0, 0};
  if (!s.is_array() || s.empty() || s.size() > 3) {
    throw ConfigError(where + ": site must be an integer or a list of up to 3 integers");
  }
  std::array<int, 3> c{0, 0, 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].is_number_integer()) throw ConfigError(where + ": site coordinates must be integers");
    c[i] = s[i].get<int>();
  }
  return {c[0], c[1], c[2]};
}

std::map<GridIndex, SiteState> parse_overrides(const json& list, int dim, const std::string& where) {
  std::map<GridIndex, SiteState> out;
  if (list.is_null()) return out;
  if (!list.is_array()) throw ConfigError(where + " must be a list");
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("site") || !item.contains("state")) {
      throw ConfigError(where + ": each entry needs site and state");
    }
    out[parse_site(item.at("site"), where)] = parse_state(item.at("state"), dim, where);
  }
  return out;
}

BackgroundConfig parse_background(const json& obj, int dim, const std::string& where) {
  check_keys(obj, where, {"rule", "state", "period", "pattern", "patches"});
  BackgroundConfig bg;
  read(obj, "rule", bg.rule, where);
  if (bg.rule == "uniform") {
    if (obj.contains("state")) {
      bg.pattern.push_back(parse_state(obj.at("state"), dim, where + ".state"));
    } else {
      json vacuum = json::array({1});
      bg.pattern.push_back(parse_state(vacuum, dim, where));
    }
  } else if (bg.rule == "periodic") {
    if (!obj.contains("period") || !obj.contains("pattern")) {
      throw ConfigError(where + ": periodic rule needs period and pattern");
    }
    const json& p = obj.at("period");
    if (!p.is_array() || p.empty() || p.size() > 3) throw ConfigError(where + ".period must list 1-3 integers");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number_integer() || p[i].get<int>() < 1) {
        throw ConfigError(where + ".period entries must be positive integers");
      }
      bg.period[i] = p[i].get<int>();
    }
    const json& pat = obj.at("pattern");
    if (!pat.is_array()) throw ConfigError(where + ".pattern must be a list of states");
    for (const auto& s : pat) bg.pattern.push_back(parse_state(s, dim, where + ".pattern"));
    const std::size_t expect = static_cast<std::size_t>(bg.period[0]) * bg.period[1] * bg.period[2];
    if (bg.pattern.size() != expect) {
      throw ConfigError(where + ".pattern needs " + std::to_string(expect) + " states");
    }
  } else {
    throw ConfigError(where + ".rule must be uniform or periodic");
  }
  if (obj.contains("patches")) bg.patches = parse_overrides(obj.at("patches"), dim, where + ".patches");
  return bg;
}

std::vector<double> parse_list(const json& obj, const char* key, std::vector<double> fallback,
                               const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_object()) {
    // {min, max, count}: geometric schedule.
    double lo = 0.0, hi = 0.0;
    int count = 0;
    read(v, "min", lo, where + "." + key);
    read(v, "max", hi, where + "." + key);
    read(v, "count", count, where + "." + key);
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
      throw ConfigError(where + "." + key + " needs 0 < min < max and count >= 2");
    }
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
      out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    }
    return out;
  }
  std::vector<double> out;
  read(obj, key, out, where);
  return out;
}

}  // namespace

nlohmann::json read_config_tree(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    if (path.extension() == ".json") return nlohmann::json::parse(buf.str());
    return yaml_to_json(YAML::Load(buf.str()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  } catch (const YAML::Exception& e) {
    throw ConfigError("invalid YAML in " + path.string() + ": " + e.what());
  }
}

ExperimentConfig parse_config(const nlohmann::json& tree, const Overrides& overrides) {
  const json root = tree.is_null() ? json::object() : tree;
  if (!root.is_object()) throw ConfigError("config root must be a mapping");
  check_keys(root, "config", {"lattice", "hamiltonian", "background", "initial", "window", "time",
                              "master", "overlap", "oracle", "seed", "output", "cap"});
  ExperimentConfig c;

  const json& lat = section(root, "lattice");
  check_keys(lat, "lattice", {"dimension", "n_max", "dx", "mass"});
  int n_max = 1;
  double dx = 1.0, mass = 1.0;
  read(lat, "dimension", c.hamiltonian.dimension, "lattice");
  read(lat, "n_max", n_max, "lattice");
  read(lat, "dx", dx, "lattice");
  read(lat, "mass", mass, "lattice");
  if (overrides.n_max) n_max = *overrides.n_max;
  try {
    c.hamiltonian.trunc = FockTruncation(n_max, dx, mass);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("lattice: ") + e.what());
  }
  const int dim = c.hamiltonian.trunc.dim();

  const json& ham = section(root, "hamiltonian");
  check_keys(ham, "hamiltonian", {"convention", "hopping", "hopping_offset", "hopping_phase", "g",
                                  "range", "chemical_potential", "tilt"});
  std::string convention = "standard";
  read(ham, "convention", convention, "hamiltonian");
  if (convention == "standard") {
    c.hamiltonian.convention = KineticConvention::standard;
  } else if (convention == "literal") {
    c.hamiltonian.convention = KineticConvention::literal;
  } else {
    throw ConfigError("hamiltonian.convention must be standard or literal");
  }
  read(ham, "hopping", c.hamiltonian.hopping, "hamiltonian");
  read(ham, "hopping_offset", c.hamiltonian.hopping_offset, "hamiltonian");
  read(ham, "hopping_phase", c.hamiltonian.hopping_phase, "hamiltonian");
  read(ham, "g", c.hamiltonian.coupling, "hamiltonian");
  read(ham, "range", c.hamiltonian.range, "hamiltonian");
  read(ham, "chemical_potential", c.hamiltonian.chemical_potential, "hamiltonian");
  read(ham, "tilt", c.hamiltonian.tilt, "hamiltonian");

  c.background = parse_background(section(root, "background"), dim, "background");
  if (root.contains("initial")) c.initial = parse_overrides(root.at("initial"), dim, "initial");

  const json& win = section(root, "window");
  check_keys(win, "window", {"size", "buffer"});
  read(win, "size", c.window.size, "window");
  read(win, "buffer", c.window.buffer, "window");
  if (overrides.window) c.window.size = *overrides.window;

  const json& tm = section(root, "time");
  check_keys(tm, "time", {"t_max", "dt", "leakage_tol"});
  read(tm, "t_max", c.time.t_max, "time");
  read(tm, "dt", c.time.dt, "time");
  if (tm.contains("leakage_tol")) {
    double tol = 0.0;
    read(tm, "leakage_tol", tol, "time");
    c.time.leakage_tol = tol;
  }
  if (overrides.t_max) c.time.t_max = *overrides.t_max;
  if (overrides.dt) c.time.dt = *overrides.dt;

  const json& ms = section(root, "master");
  check_keys(ms, "master", {"basis", "channel", "eta", "eta_schedule", "plateau_spread",
                            "couplings", "taus", "sample_dt"});
  std::string basis = to_string(c.master.basis), channel = to_string(c.master.channel);
  read(ms, "basis", basis, "master");
  read(ms, "channel", channel, "master");
  try {
    c.master.basis = parse_basis_preset(basis);
    c.master.channel = parse_coupling_channel(channel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("master: ") + e.what());
  }
  read(ms, "eta", c.master.eta, "master");
  read(ms, "plateau_spread", c.master.plateau_spread, "master");
  read(ms, "sample_dt", c.master.sample_dt, "master");
  c.master.eta_schedule = parse_list(ms, "eta_schedule", {}, "master");
  if (c.master.eta_schedule.empty()) {
    json geometric = {{"eta_schedule", {{"min", 1e-3}, {"max", 10.0}, {"count", 25}}}};
    c.master.eta_schedule = parse_list(geometric, "eta_schedule", {}, "master");
  }
  c.master.couplings = parse_list(ms, "couplings", c.master.couplings, "master");
  c.master.taus = parse_list(ms, "taus", c.master.taus, "master");
  if (overrides.eta) c.master.eta = *overrides.eta;
  if (overrides.g) {
    c.hamiltonian.coupling = *overrides.g;
    c.master.couplings = {*overrides.g};
  }

  const json& ov = section(root, "overlap");
  check_keys(ov, "overlap", {"max_radius", "compare", "other"});
  read(ov, "max_radius", c.overlap.max_radius, "overlap");
  read(ov, "compare", c.overlap.compare, "overlap");
  if (c.overlap.compare == "background") {
    if (!ov.contains("other")) throw ConfigError("overlap.compare = background needs overlap.other");
    c.overlap.other = parse_background(ov.at("other"), dim, "overlap.other");
  } else if (c.overlap.compare != "reversed" && c.overlap.compare != "same") {
    throw ConfigError("overlap.compare must be reversed, same or background");
  }

  const json& orc = section(root, "oracle");
  check_keys(orc, "oracle", {"trials"});
  read(orc, "trials", c.oracle.trials, "oracle");

  read(root, "seed", c.seed, "config");
  std::string output = c.output.string();
  read(root, "output", output, "config");
  c.output = output;
  read(root, "cap", c.cap, "config");
  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.output) c.output = *overrides.output;

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
  return parse_config(read_config_tree(path), overrides);
}

void validate(const ExperimentConfig& c) {
  try {
    c.hamiltonian.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("hamiltonian: ") + e.what());
  }
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(c.window.size >= 1, "window.size must be >= 1");
  require(c.window.buffer >= 0, "window.buffer must be >= 0");
  require(c.time.t_max >= 0.0 && std::isfinite(c.time.t_max), "time.t_max must be finite and >= 0");
  require(c.time.dt > 0.0 && std::isfinite(c.time.dt), "time.dt must be positive");
  require(!c.time.leakage_tol || *c.time.leakage_tol >= 0.0, "time.leakage_tol must be >= 0");
  require(c.master.eta > 0.0, "master.eta must be positive");
  require(c.master.eta_schedule.size() >= 2, "master.eta_schedule needs at least two values");
  for (double e : c.master.eta_schedule) require(e > 0.0, "master.eta_schedule values must be positive");
  require(c.master.plateau_spread > 0.0, "master.plateau_spread must be positive");
  require(c.master.sample_dt > 0.0, "master.sample_dt must be positive");
  require(!c.master.couplings.empty(), "master.couplings must not be empty");
  for (double g : c.master.couplings) require(g >= 0.0, "master.couplings must be >= 0");
  for (double t : c.master.taus) require(t >= 0.0, "master.taus must be >= 0");
  require(c.overlap.max_radius >= 0 && c.overlap.max_radius <= 100000,
          "overlap.max_radius must lie in [0, 100000]");
  require(c.oracle.trials >= 1, "oracle.trials must be >= 1");
  require(c.cap >= 1, "cap must be >= 1");
  for (const auto& [site, s] : c.background.patches) {
    for (int axis = c.hamiltonian.dimension; axis < 3; ++axis) {
      require(site[axis] == 0, "background patch " + site.to_string() + " uses an unused axis");
    }
  }
  const Window w = make_window(c, c.window.size);
  for (const auto& [site, s] : c.initial) {
    require(w.contains(site), "initial override " + site.to_string() + " lies outside the window");
    for (int axis = 0; axis < c.hamiltonian.dimension; ++axis) {
      int lo = site[axis], hi = site[axis];
      for (const auto& other : w.sites()) {
        lo = std::min(lo, other[axis]);
        hi = std::max(hi, other[axis]);
      }
      require(site[axis] - lo >= c.window.buffer && hi - site[axis] >= c.window.buffer,
              "initial override " + site.to_string() + " is closer than window.buffer to the edge");
    }
  }
  if (w.hilbert_dim(c.hamiltonian.trunc.dim(), c.cap) == 0) {
    throw CapExceeded("window Hilbert dimension exceeds cap " + std::to_string(c.cap));
  }
}

Background build_background(const ExperimentConfig& config, const BackgroundConfig& bg) {
  const FockTruncation& trunc = config.hamiltonian.trunc;
  Background base = bg.rule == "periodic" ? Background::periodic(trunc, bg.period, bg.pattern)
                                          : Background::uniform(trunc, bg.pattern.front());
  return bg.patches.empty() ? base : base.with_patches(bg.patches);
}

Window make_window(const ExperimentConfig& config, int size) {
  const int lo = -(size - 1) / 2;
  const int hi = lo + size - 1;
  GridIndex a{lo, 0, 0}, b{hi, 0, 0};
  if (config.hamiltonian.dimension >= 2) {
    a.i2 = lo;
    b.i2 = hi;
  }
  if (config.hamiltonian.dimension >= 3) {
    a.i3 = lo;
    b.i3 = hi;
  }
  return Window::box(a, b);
}

}  // namespace qsector::cli
