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

// Dense reference implementations written directly from the definitions,
// sharing no code with the library's embedding or canonicalization.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qsector/algebra.hpp"
#include "qsector/state.hpp"

namespace qsector::oracle {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Truncated annihilation operator: a|n> = sqrt(n)|n-1>.
inline Matrix lower(int n_max) {
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Operator `op` at position `pos` of an `len`-site chain, identity elsewhere.
inline Matrix at(const Matrix& op, int pos, int len) {
  const Eigen::Index d = op.rows();
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < len; ++s) out = kron(out, s == pos ? op : Matrix(Matrix::Identity(d, d)));
  return out;
}

/// Sum over terms of coefficient times the ordered Kronecker product over `window`.
inline Matrix dense(const QuasiLocalOperator& a, const Window& window) {
  const Eigen::Index d = a.truncation().dim();
  Eigen::Index total = 1;
  for (std::size_t i = 0; i < window.size(); ++i) total *= d;
  Matrix out = Matrix::Zero(total, total);
  for (const auto& term : a.terms()) {
    Matrix acc = Matrix::Identity(1, 1);
    for (const auto& site : window.sites()) {
      auto it = term.product.factors.find(site);
      acc = kron(acc, it == term.product.factors.end() ? Matrix(Matrix::Identity(d, d))
                                                       : it->second.matrix);
    }
    out += term.coefficient * acc;
  }
  return out;
}

inline Vector dense(const LocalVector& v, const Window& window) {
  const Eigen::Index d = v.background().truncation().dim();
  Eigen::Index total = 1;
  for (std::size_t i = 0; i < window.size(); ++i) total *= d;
  Vector out = Vector::Zero(total);
  for (const auto& term : v.terms()) {
    Matrix acc = Matrix::Identity(1, 1);
    for (const auto& site : window.sites()) {
      auto it = term.overrides.find(site);
      acc = kron(acc, it == term.overrides.end() ? Matrix(v.background().state_at(site).amplitudes)
                                                 : Matrix(it->second.amplitudes));
    }
    out += term.coefficient * acc.col(0);
  }
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace qsector::oracle
