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
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/lattice.hpp"

namespace qsector {

class Background;

/// Label of an equivalence class of backgrounds: two backgrounds share a
/// SectorId iff their rules agree (up to per-site phase) at all but finitely
/// many sites.
///
/// Stored as the minimal periodic tail of the rule, with each site state
/// normalized and its first nonzero amplitude made real positive.
class SectorId {
 public:
  static constexpr double kTolerance = 1e-12;

  const std::array<int, 3>& period() const { return period_; }
  const std::vector<Vector>& pattern() const { return pattern_; }
  bool is_uniform() const { return pattern_.size() == 1; }

  bool operator==(const SectorId& other) const;
  std::string describe() const;

 private:
  friend class Background;
  std::array<int, 3> period_{1, 1, 1};
  std::vector<Vector> pattern_;
};

enum class BackgroundRule { uniform, periodic, explicit_sites };

/// A fully pure state vector: a normalized single-site state at every grid
/// point, given by a (possibly periodic) base rule plus finitely many
/// explicit patches.
class Background {
 public:
  static constexpr double kNormTolerance = 1e-12;

  static Background uniform(const FockTruncation& trunc, const SiteState& state);
  /// Pattern entry for site I is pattern[(i1 mod p1) + p1 * ((i2 mod p2) + p2 * (i3 mod p3))].
  static Background periodic(const FockTruncation& trunc, const std::array<int, 3>& period,
                             std::vector<SiteState> pattern);
  /// Explicit assignment on finitely many sites, `fallback` everywhere else.
  static Background explicit_sites(const FockTruncation& trunc,
                                   std::map<GridIndex, SiteState> sites,
                                   const SiteState& fallback);

  /// This rule with the given sites overwritten; the result is explicit.
  Background with_patches(const std::map<GridIndex, SiteState>& patches) const;

  BackgroundRule rule() const { return rule_; }
  const FockTruncation& truncation() const { return trunc_; }
  const std::array<int, 3>& period() const { return period_; }
  const std::vector<SiteState>& pattern() const { return pattern_; }
  const std::map<GridIndex, SiteState>& patches() const { return patches_; }

  SiteState state_at(const GridIndex& site) const;
  /// State the base rule assigns, ignoring patches.
  const SiteState& base_state_at(const GridIndex& site) const;

  /// Sitewise complex conjugate of the whole rule.
  Background conjugated() const;

  SectorId sector() const;

 private:
  Background(FockTruncation trunc) : trunc_(trunc) {}
  void validate() const;

  FockTruncation trunc_;
  BackgroundRule rule_ = BackgroundRule::uniform;
  std::array<int, 3> period_{1, 1, 1};
  std::vector<SiteState> pattern_;
  std::map<GridIndex, SiteState> patches_;
};

using BackgroundPtr = std::shared_ptr<const Background>;

BackgroundPtr make_background(Background bg);

/// Background with finitely many (possibly non-normalized) site overrides.
struct PureStateVector {
  BackgroundPtr background;
  std::map<GridIndex, SiteState> overrides;
};

struct VectorTerm {
  Complex coefficient;
  std::map<GridIndex, SiteState> overrides;
};

/// Element of the sector Hilbert space: a finite linear combination of pure
/// state vectors over one shared background.
///
/// Canonical form mirrors QuasiLocalOperator: override states are pivot
/// normalized, overrides proportional to the background state are folded into
/// the coefficient, and terms differing at no more than one site are merged
/// (the single-site case is the product-form sum of two vectors).
class LocalVector {
 public:
  static constexpr double kPruneThreshold = 1e-14;

  /// The zero vector of the background's sector.
  explicit LocalVector(BackgroundPtr background);

  /// The background itself, as a unit vector.
  static LocalVector of_background(BackgroundPtr background);
  static LocalVector from(const PureStateVector& v, Complex coefficient = 1.0);
  static LocalVector from_terms(BackgroundPtr background, std::vector<VectorTerm> terms);

  const Background& background() const { return *background_; }
  const BackgroundPtr& background_ptr() const { return background_; }
  const std::vector<VectorTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  SectorId sector() const { return background_->sector(); }
  /// Sorted union of override sites.
  std::vector<GridIndex> support() const;

  LocalVector& operator+=(const LocalVector& other);
  LocalVector& operator*=(Complex scale);

  void canonicalize();

 private:
  BackgroundPtr background_;
  std::vector<VectorTerm> terms_;
};

/// Sesquilinear product <u|v>. Sites outside the overrides and patches
/// contribute a factor of 1. Throws SectorMismatch across sectors.
Complex inner_product(const LocalVector& u, const LocalVector& v);
/// As inner_product, but returns exactly 0 for vectors of different sectors.
Complex sector_inner_product(const LocalVector& u, const LocalVector& v);
double norm(const LocalVector& v);

/// c * v1 + d * v2. Throws SectorMismatch across sectors.
LocalVector linear_combine(Complex c, const LocalVector& v1, Complex d, const LocalVector& v2);

/// Sitewise action of a quasi-local operator. The background is unchanged.
LocalVector apply(const QuasiLocalOperator& a, const LocalVector& v);

/// True iff the vector's background shares the sector of `background`.
bool equivalent(const PureStateVector& v, const Background& background);

/// Partial product over |I|_inf <= radius (first `dimension` axes) of
/// <rho2(I)|rho1(I)>.
Complex cross_sector_overlap_partial(const Background& rho1, const Background& rho2, int radius,
                                     int dimension = 1);
/// Partial products for radius = 0..max_radius, built shell by shell.
std::vector<Complex> overlap_profile(const Background& rho1, const Background& rho2,
                                     int max_radius, int dimension = 1);
/// Number of sites with |I|_inf <= radius: (2 radius + 1)^dimension.
std::size_t sites_within(int radius, int dimension);

/// Window factor of `v` as a dense vector (first window site most
/// significant). Overrides must lie inside the window.
Vector dense_state(const LocalVector& v, const Window& window,
                   std::size_t cap = kDefaultDenseCap);
/// Inverse of dense_state for a vector on `window` over `background`.
LocalVector from_dense_state(const Vector& psi, const Window& window, BackgroundPtr background,
                             double threshold = LocalVector::kPruneThreshold);

}  // namespace qsector
