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

#include "qsector/functional.hpp"

#include <stdexcept>

namespace qsector {

PureStateFunctional::PureStateFunctional(LocalVector vector)
    : vector_(std::move(vector)), norm_squared_(inner_product(vector_, vector_).real()) {
  if (!(norm_squared_ > 0.0)) throw std::invalid_argument("pure state needs a nonzero vector");
}

MixedState::MixedState(std::vector<std::pair<double, PureStateFunctional>> components) {
  for (auto& [w, s] : components) add(w, std::move(s));
}

void MixedState::add(double weight, PureStateFunctional state) {
  if (!(weight > 0.0)) throw std::invalid_argument("mixed-state weights must be positive");
  components_.emplace_back(weight, std::move(state));
}

Complex evaluate(const PureStateFunctional& state, const QuasiLocalOperator& a) {
  return inner_product(state.vector(), apply(a, state.vector()));
}

Complex expectation(const PureStateFunctional& state, const QuasiLocalOperator& a) {
  return evaluate(state, a) / state.weight();
}

Complex evaluate_mixed(const MixedState& state, const QuasiLocalOperator& a) {
  Complex total{};
  for (const auto& [w, s] : state.components()) total += w * evaluate(s, a);
  return total;
}

Complex expectation_mixed(const MixedState& state, const QuasiLocalOperator& a) {
  double weight = 0.0;
  for (const auto& [w, s] : state.components()) weight += w * s.weight();
  if (!(weight > 0.0)) throw std::invalid_argument("empty mixed state");
  return evaluate_mixed(state, a) / weight;
}

}  // namespace qsector
