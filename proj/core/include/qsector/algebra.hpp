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
#include <map>
#include <vector>

#include "qsector/lattice.hpp"

namespace qsector {

/// Product of site operators over finitely many sites; identity elsewhere.
struct ProductOperator {
  std::map<GridIndex, SiteOperator> factors;

  std::vector<GridIndex> support() const;
};

struct OperatorTerm {
  Complex coefficient;
  ProductOperator product;
};

/// Element of the quasi-local *-algebra: a finite linear combination of
/// product operators.
///
/// Every mutating operation leaves the term list in canonical form: each site
/// factor is scaled so its pivot entry is 1 (the scale moves into the
/// coefficient), identity factors are dropped, terms that agree on all but at
/// most one site are folded together, and coefficients of modulus <= 1e-14
/// are pruned.
class QuasiLocalOperator {
 public:
  static constexpr double kPruneThreshold = 1e-14;

  /// The zero operator.
  explicit QuasiLocalOperator(FockTruncation trunc);

  static QuasiLocalOperator identity(const FockTruncation& trunc);
  static QuasiLocalOperator site(const FockTruncation& trunc, const GridIndex& at,
                                 const SiteOperator& op, Complex coefficient = 1.0);
  static QuasiLocalOperator product(const FockTruncation& trunc, ProductOperator product,
                                    Complex coefficient = 1.0);
  /// Builds from raw terms and canonicalizes.
  static QuasiLocalOperator from_terms(const FockTruncation& trunc,
                                       std::vector<OperatorTerm> terms);

  const FockTruncation& truncation() const { return trunc_; }
  const std::vector<OperatorTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  QuasiLocalOperator& operator+=(const QuasiLocalOperator& other);
  QuasiLocalOperator& operator-=(const QuasiLocalOperator& other);
  QuasiLocalOperator& operator*=(Complex scale);

  /// Re-runs canonicalization (idempotent up to rounding).
  void canonicalize();

 private:
  FockTruncation trunc_;
  std::vector<OperatorTerm> terms_;
};

QuasiLocalOperator add(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
QuasiLocalOperator multiply(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
QuasiLocalOperator adjoint(const QuasiLocalOperator& a);
/// ab - ba.
QuasiLocalOperator commutator(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
/// Sorted union of the term supports.
std::vector<GridIndex> support(const QuasiLocalOperator& a);

QuasiLocalOperator operator+(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
QuasiLocalOperator operator-(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
QuasiLocalOperator operator*(const QuasiLocalOperator& a, const QuasiLocalOperator& b);
QuasiLocalOperator operator*(Complex scale, const QuasiLocalOperator& a);

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Dense matrix of `a` on `window` as a Kronecker product over the window
/// sites in order. Throws WindowTooSmall if support(a) is not inside the
/// window and CapExceeded if the dimension would exceed `cap`.
Matrix embed_dense(const QuasiLocalOperator& a, const Window& window,
                   std::size_t cap = kDefaultDenseCap);

/// Inverse of embed_dense: expands a window matrix in a product basis whose
/// first site element is the identity, so identity factors vanish from the
/// result. Coefficients of modulus <= `threshold` are dropped.
QuasiLocalOperator from_dense(const Matrix& m, const Window& window, const FockTruncation& trunc,
                              double threshold = QuasiLocalOperator::kPruneThreshold);

/// Partial trace over the window sites listed in `traced`; returns a matrix on
/// the remaining sites (in window order).
Matrix partial_trace(const Matrix& m, const Window& window, int local_dim,
                     const std::vector<GridIndex>& traced);

}  // namespace qsector
