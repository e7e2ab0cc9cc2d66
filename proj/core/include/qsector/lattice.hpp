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

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qsector {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Integer coordinates of a lattice site. Unused coordinates stay zero.
struct GridIndex {
  int i1 = 0;
  int i2 = 0;
  int i3 = 0;

  constexpr auto operator<=>(const GridIndex&) const = default;

  constexpr int operator[](int axis) const {
    return axis == 0 ? i1 : (axis == 1 ? i2 : i3);
  }

  /// Site displaced by `offset` along `axis` (0-based).
  [[nodiscard]] GridIndex shifted(int axis, int offset) const;

  [[nodiscard]] std::string to_string() const;
};

/// Largest coordinate distance |I - J|_inf.
int chebyshev_distance(const GridIndex& a, const GridIndex& b);
/// Squared Euclidean distance in lattice units.
int squared_distance(const GridIndex& a, const GridIndex& b);

/// Per-site occupation cutoff plus the grid spacing and particle mass.
class FockTruncation {
 public:
  explicit FockTruncation(int n_max = 1, double dx = 1.0, double mass = 1.0);

  int n_max() const { return n_max_; }
  double dx() const { return dx_; }
  double mass() const { return mass_; }
  /// Local Hilbert dimension n_max + 1.
  int dim() const { return n_max_ + 1; }
  /// Scale factor dx^{3/2} relating field operators to ladder operators.
  double field_scale() const;

  bool operator==(const FockTruncation&) const = default;

 private:
  int n_max_;
  double dx_;
  double mass_;
};

/// Amplitudes C_n of a single-site vector in the number basis. Need not be normalized.
struct SiteState {
  Vector amplitudes;
};

/// Single-site operator as a matrix in the number basis.
struct SiteOperator {
  Matrix matrix;
};

struct LadderPair {
  SiteOperator lower;  // a
  SiteOperator raise;  // a^dagger
};

/// Truncated annihilation/creation pair. a_dag|n_max> = 0.
LadderPair ladder_ops(const FockTruncation& trunc);
SiteOperator identity_op(const FockTruncation& trunc);
/// a^dagger a = diag(0, 1, ..., n_max).
SiteOperator number_op(const FockTruncation& trunc);

/// |n>; throws std::out_of_range unless 0 <= n <= n_max.
SiteState number_basis_state(const FockTruncation& trunc, int n);

/// <phi2|phi1>, conjugate-linear in the first argument.
Complex site_inner(const SiteState& phi2, const SiteState& phi1);

/// Entrywise complex conjugation in the number basis.
SiteState site_conjugate(const SiteState& x);
SiteOperator site_conjugate(const SiteOperator& x);

/// Finite ordered set of sites; the first site is the most significant
/// Kronecker factor in every dense embedding.
class Window {
 public:
  Window() = default;
  /// Sorts and deduplicates.
  explicit Window(std::vector<GridIndex> sites);

  /// Box [lo, hi] (inclusive) over all three coordinates.
  static Window box(const GridIndex& lo, const GridIndex& hi);
  /// `length` consecutive sites along axis 1 starting at i1 = first.
  static Window chain(int length, int first = 0);

  const std::vector<GridIndex>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool contains(const GridIndex& site) const;
  /// Position of `site` in the ordering; throws std::out_of_range if absent.
  std::size_t position(const GridIndex& site) const;

  /// Sites on the surface of the bounding box, restricted to axes with extent > 1.
  std::vector<GridIndex> boundary() const;
  /// Hilbert dimension dim^size, or 0 if it exceeds `cap`.
  std::size_t hilbert_dim(int local_dim, std::size_t cap) const;

 private:
  std::vector<GridIndex> sites_;
};

}  // namespace qsector
