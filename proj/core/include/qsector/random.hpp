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
#include <random>
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/lattice.hpp"
#include "qsector/state.hpp"

namespace qsector {

/// Seeded source for randomized operators and states. Draws depend only on
/// the seed and call order.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  /// Real and imaginary parts uniform in [-1, 1].
  Complex complex();

  Matrix matrix(Eigen::Index rows, Eigen::Index cols);
  SiteOperator site_operator(const FockTruncation& trunc);
  /// Normalized.
  SiteState site_state(const FockTruncation& trunc);

  /// Sum of `terms` random products, each on 1..max_support sites drawn from `sites`.
  QuasiLocalOperator quasi_local(const FockTruncation& trunc, const std::vector<GridIndex>& sites,
                                 int terms, int max_support);
  /// Random combination of `terms` pure vectors overriding up to
  /// max_support sites drawn from `sites`.
  LocalVector local_vector(const BackgroundPtr& background, const std::vector<GridIndex>& sites,
                           int terms, int max_support);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::vector<GridIndex> pick(const std::vector<GridIndex>& sites, int count);
  std::mt19937_64 engine_;
};

}  // namespace qsector
