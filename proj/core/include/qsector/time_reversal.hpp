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

#include <cstddef>
#include <string>
#include <vector>

#include "qsector/algebra.hpp"
#include "qsector/dynamics.hpp"
#include "qsector/lattice.hpp"
#include "qsector/state.hpp"

namespace qsector {

/// T A = A*: conjugates coefficients and every site matrix in the number basis.
QuasiLocalOperator reverse_operator(const QuasiLocalOperator& a);

/// Sitewise conjugate of the background rule and its patches.
Background reverse_background(const Background& rho);

/// Conjugates background, overrides and coefficients. The result usually
/// lives in a different sector.
LocalVector reverse_state(const LocalVector& v);

enum class SectorVerdict { invariant, jumped };

std::string to_string(SectorVerdict verdict);

struct ReversalClassification {
  SectorVerdict verdict = SectorVerdict::invariant;
  /// Largest per-site overlap |<phi(I)|phi(I)*>| among the recurring sites
  /// where it is below 1; 1 for invariant backgrounds.
  double q = 1.0;
  /// |<phi|phi*>| for each entry of the base rule's periodic pattern.
  std::vector<double> pattern_overlaps;
};

/// Overlaps within this distance of 1 count as exactly invariant.
inline constexpr double kInvariantTolerance = 1e-12;
/// Overlaps in (1 - kUndecidableBand, 1 - kInvariantTolerance) are refused.
inline constexpr double kUndecidableBand = 1e-9;

/// Decides whether rho and T rho share a sector. Only the periodic base rule
/// matters: patches touch finitely many sites. Throws UndecidableSector when
/// an overlap falls in the ambiguous band just below 1.
ReversalClassification sector_of_reversal(const Background& rho);

/// HS norm of conj(L) - L, the dense form of T L T - L on the window.
double check_TLT_equals_L(const HamiltonianSpec& spec, const Window& window,
                          std::size_t cap = kDefaultDenseCap);

struct ReversalParity {
  int sign = 0;             // +1 even, -1 odd, 0 neither
  double even_residual = 0.0;  // |T A - A| / |A| (HS, dense)
  double odd_residual = 0.0;   // |T A + A| / |A|
};

/// Classifies T A = +A or -A by dense comparison on `window`.
ReversalParity reversal_parity(const QuasiLocalOperator& a, const Window& window,
                               double tol = 1e-12);

struct SignTableRow {
  std::string name;
  ReversalParity parity;
};

/// Parities of N(I), P(I) along axis 0 and the energy density h(I) at `site`,
/// embedded in a window wide enough to hold each of them.
std::vector<SignTableRow> reversal_sign_table(const HamiltonianSpec& spec, const GridIndex& site);

}  // namespace qsector
