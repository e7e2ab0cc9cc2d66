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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "output.hpp"
#include "qsector/errors.hpp"

namespace qsector::cli {
namespace {

using nlohmann::json;

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "qsector_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST(Config, DefaultsAreValid) {
  const ExperimentConfig c = parse_config(json::object());
  EXPECT_EQ(c.hamiltonian.trunc.n_max(), 1);
  EXPECT_EQ(c.window.size, 3);
  EXPECT_EQ(c.master.couplings.size(), 3u);
  EXPECT_GE(c.master.eta_schedule.size(), 2u);
}

TEST(Config, YamlAndJsonAgree) {
  const auto y = scratch("c.yaml");
  const auto j = scratch("c.json");
  write(y,
        "lattice: {n_max: 2, dx: 0.5}\n"
        "hamiltonian: {g: 0.25, range: 1, convention: literal}\n"
        "background:\n  rule: uniform\n  state: [1, [0, 1]]\n"
        "master: {eta_schedule: {min: 0.01, max: 1, count: 3}}\n"
        "seed: 9\n");
  write(j,
        R"({"lattice": {"n_max": 2, "dx": 0.5}, "hamiltonian": {"g": 0.25, "range": 1,
        "convention": "literal"}, "background": {"rule": "uniform", "state": [1, [0, 1]]},
        "master": {"eta_schedule": {"min": 0.01, "max": 1, "count": 3}}, "seed": 9})");
  const auto a = load_config(y), b = load_config(j);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_EQ(b.seed, 9u);
  EXPECT_EQ(a.hamiltonian.convention, KineticConvention::literal);
  EXPECT_DOUBLE_EQ(a.hamiltonian.trunc.dx(), 0.5);
  EXPECT_EQ(a.background.pattern.front().amplitudes, b.background.pattern.front().amplitudes);
  // [1, i] normalized and zero-padded to n_max = 2.
  EXPECT_NEAR(a.background.pattern.front().amplitudes.norm(), 1.0, 1e-15);
  EXPECT_EQ(a.background.pattern.front().amplitudes.size(), 3);
  ASSERT_EQ(a.master.eta_schedule.size(), 3u);
  EXPECT_NEAR(a.master.eta_schedule[1], 0.1, 1e-15);
}

TEST(Config, OverridesApplyBeforeValidation) {
  Overrides ov;
  ov.n_max = 3;
  ov.window = 5;
  ov.g = 0.7;
  ov.seed = 4;
  ov.eta = 0.02;
  const auto c = parse_config(json::object(), ov);
  EXPECT_EQ(c.hamiltonian.trunc.n_max(), 3);
  EXPECT_EQ(c.window.size, 5);
  EXPECT_DOUBLE_EQ(c.hamiltonian.coupling, 0.7);
  EXPECT_EQ(c.master.couplings, std::vector<double>{0.7});
  EXPECT_DOUBLE_EQ(c.master.eta, 0.02);
  ov.window = 0;
  EXPECT_THROW(parse_config(json::object(), ov), ConfigError);
}

TEST(Config, StructuredErrors) {
  EXPECT_THROW(parse_config(json{{"lattice", {{"n_max", 0}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"lattice", {{"bogus", 1}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"hamiltonian", {{"g", "high"}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"background", {{"state", {0, 0}}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"background", {{"state", {1, 0, 0}}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"background", {{"rule", "periodic"}, {"period", {2}},
                                                  {"pattern", {{1}}}}}}),
               ConfigError);
  EXPECT_THROW(parse_config(json{{"initial", {{{"site", 5}, {"state", {0, 1}}}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"window", {{"size", 3}, {"buffer", 2}}},
                                 {"initial", {{{"site", 0}, {"state", {0, 1}}}}}}),
               ConfigError);
  EXPECT_THROW(parse_config(json{{"master", {{"basis", "nope"}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"time", {{"dt", 0}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"cap", 10}, {"window", {{"size", 4}}}}), CapExceeded);
  EXPECT_THROW(load_config(scratch("missing.yaml")), ConfigError);
  const auto bad = scratch("bad.yaml");
  write(bad, "lattice: [unclosed\n");
  EXPECT_THROW(load_config(bad), ConfigError);
}

TEST(Config, BackgroundsAndWindows) {
  const auto c = parse_config(json{
      {"lattice", {{"dimension", 2}}},
      {"background", {{"rule", "periodic"}, {"period", {2, 1}}, {"pattern", {{1}, {0, 1}}},
                      {"patches", {{{"site", {0, 3}}, {"state", {1, 1}}}}}}},
      {"window", {{"size", 2}}}});
  const Background bg = build_background(c, c.background);
  EXPECT_EQ(bg.state_at({1, 0, 0}).amplitudes(1), Complex(1.0));
  EXPECT_NEAR(std::abs(bg.state_at({0, 3, 0}).amplitudes(1)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(make_window(c, 2).size(), 4u);
  EXPECT_EQ(make_window(parse_config(json::object()), 5).sites().front().i1, -2);
}

TEST(Output, NumbersAndCsv) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  CsvWriter csv({"a", "b"});
  csv.row({1.5, 0.25});
  EXPECT_EQ(csv.text(), "a,b\n1.5,0.25\n");
  EXPECT_THROW(csv.row(std::vector<double>{1.0}), std::logic_error);
}

TEST(Output, AtomicWriteReplacesFile) {
  const auto p = scratch("nested/out.txt");
  write_atomic(p, "first");
  write_atomic(p, "second");
  std::stringstream s;
  s << std::ifstream(p).rdbuf();
  EXPECT_EQ(s.str(), "second");
  EXPECT_FALSE(std::filesystem::exists(p.string() + ".tmp"));
}

TEST(Output, MatrixJsonIsRowMajorPairs) {
  Matrix m(1, 2);
  m << Complex(1, 2), Complex(3, -4);
  EXPECT_EQ(matrix_json(m).dump(), "[[[1.0,2.0],[3.0,-4.0]]]");
}

}  // namespace
}  // namespace qsector::cli
