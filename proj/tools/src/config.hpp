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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsector/dynamics.hpp"
#include "qsector/master.hpp"
#include "qsector/state.hpp"

namespace qsector::cli {

/// Malformed or out-of-range configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackgroundConfig {
  std::string rule = "uniform";  // uniform | periodic
  std::array<int, 3> period{1, 1, 1};
  std::vector<SiteState> pattern;
  std::map<GridIndex, SiteState> patches;
};

struct WindowConfig {
  int size = 3;
  int buffer = 1;
};

struct TimeConfig {
  double t_max = 10.0;
  double dt = 0.5;
  std::optional<double> leakage_tol;
};

struct MasterConfig {
  BasisPreset basis = BasisPreset::densities;
  CouplingChannel channel = CouplingChannel::hopping;
  double eta = 1e-3;
  std::vector<double> eta_schedule;
  double plateau_spread = 0.1;
  std::vector<double> couplings{0.2, 0.1, 0.05};
  std::vector<double> taus{0.5, 1.0, 2.0};
  double sample_dt = 0.1;
};

struct OverlapConfig {
  int max_radius = 30;
  std::string compare = "reversed";  // reversed | same | background
  std::optional<BackgroundConfig> other;
};

struct OracleConfig {
  int trials = 100;
};

struct ExperimentConfig {
  HamiltonianSpec hamiltonian;
  BackgroundConfig background;
  std::map<GridIndex, SiteState> initial;  // evolve: overrides on top of the background
  WindowConfig window;
  TimeConfig time;
  MasterConfig master;
  OverlapConfig overlap;
  OracleConfig oracle;
  std::uint64_t seed = 0;
  std::filesystem::path output = "out";
  std::size_t cap = kDefaultDenseCap;
};

/// Command-line overrides, applied after the file is parsed and before validation.
struct Overrides {
  std::optional<std::filesystem::path> output;
  std::optional<std::uint64_t> seed;
  std::optional<double> g;
  std::optional<double> eta;
  std::optional<int> window;
  std::optional<int> n_max;
  std::optional<double> t_max;
  std::optional<double> dt;
};

/// Parses YAML (or JSON, by extension) into a JSON tree.
nlohmann::json read_config_tree(const std::filesystem::path& path);

/// Builds and validates a config. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& tree, const Overrides& overrides = {});

ExperimentConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// Bounds that must hold before any computation starts.
void validate(const ExperimentConfig& config);

Background build_background(const ExperimentConfig& config, const BackgroundConfig& bg);

/// Chain of `size` sites centred on the origin for d = 1; a cube of side
/// `size` in the first d axes otherwise.
Window make_window(const ExperimentConfig& config, int size);

}  // namespace qsector::cli
