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

#include "qsector/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qsector {

GridIndex GridIndex::shifted(int axis, int offset) const {
  GridIndex out = *this;
  switch (axis) {
    case 0: out.i1 += offset; break;
    case 1: out.i2 += offset; break;
    case 2: out.i3 += offset; break;
    default: throw std::out_of_range("axis must be 0, 1 or 2");
  }
  return out;
}

std::string GridIndex::to_string() const {
  return "(" + std::to_string(i1) + "," + std::to_string(i2) + "," + std::to_string(i3) + ")";
}

int chebyshev_distance(const GridIndex& a, const GridIndex& b) {
  return std::max({std::abs(a.i1 - b.i1), std::abs(a.i2 - b.i2), std::abs(a.i3 - b.i3)});
}

int squared_distance(const GridIndex& a, const GridIndex& b) {
  const int d1 = a.i1 - b.i1, d2 = a.i2 - b.i2, d3 = a.i3 - b.i3;
  return d1 * d1 + d2 * d2 + d3 * d3;
}

FockTruncation::FockTruncation(int n_max, double dx, double mass)
    : n_max_(n_max), dx_(dx), mass_(mass) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("grid spacing must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
}

double FockTruncation::field_scale() const { return std::pow(dx_, 1.5); }

LadderPair ladder_ops(const FockTruncation& trunc) {
  const int d = trunc.dim();
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {SiteOperator{a}, SiteOperator{a.adjoint()}};
}

SiteOperator identity_op(const FockTruncation& trunc) {
  return {Matrix::Identity(trunc.dim(), trunc.dim())};
}

SiteOperator number_op(const FockTruncation& trunc) {
  Matrix n = Matrix::Zero(trunc.dim(), trunc.dim());
  for (int k = 0; k < trunc.dim(); ++k) n(k, k) = static_cast<double>(k);
  return {n};
}

SiteState number_basis_state(const FockTruncation& trunc, int n) {
  if (n < 0 || n > trunc.n_max()) {
    throw std::out_of_range("occupation " + std::to_string(n) + " outside [0, n_max]");
  }
  Vector v = Vector::Zero(trunc.dim());
  v(n) = 1.0;
  return {v};
}

Complex site_inner(const SiteState& phi2, const SiteState& phi1) {
  return phi2.amplitudes.dot(phi1.amplitudes);
}

SiteState site_conjugate(const SiteState& x) { return {x.amplitudes.conjugate()}; }

SiteOperator site_conjugate(const SiteOperator& x) { return {x.matrix.conjugate()}; }

Window::Window(std::vector<GridIndex> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

Window Window::box(const GridIndex& lo, const GridIndex& hi) {
  std::vector<GridIndex> sites;
  for (int a = lo.i1; a <= hi.i1; ++a)
    for (int b = lo.i2; b <= hi.i2; ++b)
      for (int c = lo.i3; c <= hi.i3; ++c) sites.push_back({a, b, c});
  return Window(std::move(sites));
}

Window Window::chain(int length, int first) {
  return box({first, 0, 0}, {first + length - 1, 0, 0});
}

bool Window::contains(const GridIndex& site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

std::size_t Window::position(const GridIndex& site) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), site);
  if (it == sites_.end() || *it != site) {
    throw std::out_of_range("site " + site.to_string() + " not in window");
  }
  return static_cast<std::size_t>(it - sites_.begin());
}

std::vector<GridIndex> Window::boundary() const {
  if (sites_.empty()) return {};
  std::array<int, 3> lo{sites_.front()[0], sites_.front()[1], sites_.front()[2]};
  std::array<int, 3> hi = lo;
  for (const auto& s : sites_) {
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], s[a]);
      hi[a] = std::max(hi[a], s[a]);
    }
  }
  std::vector<GridIndex> out;
  for (const auto& s : sites_) {
    for (int a = 0; a < 3; ++a) {
      if (hi[a] > lo[a] && (s[a] == lo[a] || s[a] == hi[a])) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

std::size_t Window::hilbert_dim(int local_dim, std::size_t cap) const {
  std::size_t dim = 1;
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    dim *= static_cast<std::size_t>(local_dim);
    if (dim > cap) return 0;
  }
  return dim;
}

}  // namespace qsector
