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

#include <exception>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "qsector/errors.hpp"

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kDiagnostic = 3, kCap = 4 };

}  // namespace

int main(int argc, char** argv) {
  using namespace qsector;
  using namespace qsector::cli;

  CLI::App app{"qsector: sector-structured lattice boson dynamics and master-equation extraction"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "YAML or JSON experiment config")->required();
    cmd->add_option("--out", ov.output, "output directory");
    cmd->add_option("--seed", ov.seed, "random seed");
    cmd->add_option("--g", ov.g, "coupling (sweep coupling for master-eq)");
    cmd->add_option("--eta", ov.eta, "Lorentzian regularization");
    cmd->add_option("--window", ov.window, "window size (sites per axis)");
    cmd->add_option("--nmax", ov.n_max, "per-site occupation cutoff");
    cmd->add_option("--t-max", ov.t_max, "final time");
    cmd->add_option("--dt", ov.dt, "time step");
  };

  using Runner = int (*)(const ExperimentConfig&, std::ostream&);
  const std::pair<const char*, Runner> commands[] = {
      {"sector-overlap", run_sector_overlap},
      {"time-reversal-demo", run_time_reversal_demo},
      {"evolve", run_evolve},
      {"master-eq", run_master_eq},
      {"oracle-check", run_oracle_check},
  };
  const char* help[] = {
      "partial overlap of a background with its reversal (or another background) by radius",
      "sector verdict, per-site overlap q, |TLT - L| and the reversal sign table",
      "windowed Schroedinger evolution with density, momentum and energy series",
      "dispersion/dissipation extraction, eta plateau and exact-vs-master Van Hove sweep",
      "randomized dense-oracle equivalence checks",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    add_common(subs.back());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const ExperimentConfig config = load_config(config_path, ov);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].second(config, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const WindowTooSmall& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const DiagnosticFailure& e) {
    std::cerr << "diagnostic failure: " << e.what() << "\n";
    return kDiagnostic;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
