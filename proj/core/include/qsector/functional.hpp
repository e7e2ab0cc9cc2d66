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

#include <utility>
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/state.hpp"

namespace qsector {

/// Pure state A -> <v|A v> for a nonzero sector vector v.
class PureStateFunctional {
 public:
  /// Throws std::invalid_argument if the vector has zero norm.
  explicit PureStateFunctional(LocalVector vector);

  const LocalVector& vector() const { return vector_; }
  /// <v|v>.
  double weight() const { return norm_squared_; }

 private:
  LocalVector vector_;
  double norm_squared_;
};

/// Positive combination of pure states, possibly from different sectors.
/// Weights are not required to sum to one.
class MixedState {
 public:
  MixedState() = default;
  explicit MixedState(std::vector<std::pair<double, PureStateFunctional>> components);

  void add(double weight, PureStateFunctional state);
  const std::vector<std::pair<double, PureStateFunctional>>& components() const {
    return components_;
  }

 private:
  std::vector<std::pair<double, PureStateFunctional>> components_;
};

/// <v|A v> (unnormalized).
Complex evaluate(const PureStateFunctional& state, const QuasiLocalOperator& a);
/// <v|A v> / <v|v>.
Complex expectation(const PureStateFunctional& state, const QuasiLocalOperator& a);
/// Sum of f_alpha <v_alpha|A v_alpha>, each term evaluated in its own sector.
Complex evaluate_mixed(const MixedState& state, const QuasiLocalOperator& a);
/// evaluate_mixed divided by sum of f_alpha <v_alpha|v_alpha>.
Complex expectation_mixed(const MixedState& state, const QuasiLocalOperator& a);

}  // namespace qsector
