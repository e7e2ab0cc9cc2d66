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

#include "qsector/random.hpp"

#include <algorithm>

namespace qsector {

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int RandomSource::integer(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex RandomSource::complex() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

Matrix RandomSource::matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = complex();
  }
  return m;
}

SiteOperator RandomSource::site_operator(const FockTruncation& trunc) {
  return {matrix(trunc.dim(), trunc.dim())};
}

SiteState RandomSource::site_state(const FockTruncation& trunc) {
  Vector v = matrix(trunc.dim(), 1).col(0);
  return {v / v.norm()};
}

std::vector<GridIndex> RandomSource::pick(const std::vector<GridIndex>& sites, int count) {
  std::vector<GridIndex> pool = sites;
  count = std::min<int>(count, static_cast<int>(pool.size()));
  for (int i = 0; i < count; ++i) {
    const int j = integer(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

QuasiLocalOperator RandomSource::quasi_local(const FockTruncation& trunc,
                                             const std::vector<GridIndex>& sites, int terms,
                                             int max_support) {
  std::vector<OperatorTerm> out;
  for (int t = 0; t < terms; ++t) {
    OperatorTerm term{complex(), {}};
    for (const auto& s : pick(sites, integer(1, max_support))) {
      term.product.factors[s] = site_operator(trunc);
    }
    out.push_back(std::move(term));
  }
  return QuasiLocalOperator::from_terms(trunc, std::move(out));
}

LocalVector RandomSource::local_vector(const BackgroundPtr& background,
                                       const std::vector<GridIndex>& sites, int terms,
                                       int max_support) {
  const FockTruncation& trunc = background->truncation();
  std::vector<VectorTerm> out;
  for (int t = 0; t < terms; ++t) {
    VectorTerm term{complex(), {}};
    for (const auto& s : pick(sites, integer(0, max_support))) term.overrides[s] = site_state(trunc);
    out.push_back(std::move(term));
  }
  return LocalVector::from_terms(background, std::move(out));
}

}  // namespace qsector
