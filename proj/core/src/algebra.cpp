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

#include "qsector/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsector/detail/canonical.hpp"
#include "qsector/errors.hpp"

namespace qsector {
namespace {


// Canonicalizer works on Eigen dense factors; SiteOperator wraps one, so the
// operator terms are mirrored into matrix-valued terms and back.
struct MatrixTerm {
  Complex coefficient;
  std::map<GridIndex, Matrix> factors;
};

struct MatrixPolicy {
  int dim;

  Matrix reference(const GridIndex&) const { return Matrix::Identity(dim, dim); }
  std::map<GridIndex, Matrix>& factors(MatrixTerm& t) const { return t.factors; }
  Complex& coefficient(MatrixTerm& t) const { return t.coefficient; }
};

void canonicalize_terms(std::vector<OperatorTerm>& terms, int dim) {
  std::vector<MatrixTerm> work;
  work.reserve(terms.size());
  for (auto& t : terms) {
    MatrixTerm m{t.coefficient, {}};
    for (auto& [site, op] : t.product.factors) m.factors.emplace(site, std::move(op.matrix));
    work.push_back(std::move(m));
  }
  const MatrixPolicy policy{dim};
  detail::Canonicalizer<MatrixTerm, Matrix, MatrixPolicy>(policy,
                                                          QuasiLocalOperator::kPruneThreshold)
      .run(work);
  terms.clear();
  terms.reserve(work.size());
  for (auto& m : work) {
    OperatorTerm t{m.coefficient, {}};
    for (auto& [site, mat] : m.factors) t.product.factors.emplace(site, SiteOperator{std::move(mat)});
    terms.push_back(std::move(t));
  }
}

void require_same(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  if (!(a.truncation() == b.truncation())) throw TruncationMismatch();
}

void check_dim(const SiteOperator& op, const FockTruncation& trunc) {
  if (op.matrix.rows() != trunc.dim() || op.matrix.cols() != trunc.dim()) {
    throw std::invalid_argument("site operator dimension does not match the truncation");
  }
}

// HS-orthonormal basis of d x d matrices with element 0 = I / sqrt(d).
std::vector<Matrix> site_operator_basis(int d) {
  std::vector<Matrix> basis;
  basis.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (m == n) continue;
      Matrix e = Matrix::Zero(d, d);
      e(m, n) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  for (int k = 1; k < d; ++k) {
    Matrix h = Matrix::Zero(d, d);
    for (int j = 0; j < k; ++j) h(j, j) = 1.0;
    h(k, k) = -static_cast<double>(k);
    basis.push_back(h / std::sqrt(static_cast<double>(k * (k + 1))));
  }
  return basis;
}

}  // namespace

std::vector<GridIndex> ProductOperator::support() const {
  std::vector<GridIndex> out;
  out.reserve(factors.size());
  for (const auto& [site, op] : factors) out.push_back(site);
  return out;
}

QuasiLocalOperator::QuasiLocalOperator(FockTruncation trunc) : trunc_(trunc) {}

QuasiLocalOperator QuasiLocalOperator::identity(const FockTruncation& trunc) {
  QuasiLocalOperator out(trunc);
  out.terms_.push_back({Complex{1.0, 0.0}, {}});
  return out;
}

QuasiLocalOperator QuasiLocalOperator::site(const FockTruncation& trunc, const GridIndex& at,
                                            const SiteOperator& op, Complex coefficient) {
  ProductOperator p;
  p.factors.emplace(at, op);
  return product(trunc, std::move(p), coefficient);
}

QuasiLocalOperator QuasiLocalOperator::product(const FockTruncation& trunc, ProductOperator product,
                                               Complex coefficient) {
  std::vector<OperatorTerm> terms;
  terms.push_back({coefficient, std::move(product)});
  return from_terms(trunc, std::move(terms));
}

QuasiLocalOperator QuasiLocalOperator::from_terms(const FockTruncation& trunc,
                                                  std::vector<OperatorTerm> terms) {
  for (const auto& t : terms)
    for (const auto& [site, op] : t.product.factors) check_dim(op, trunc);
  QuasiLocalOperator out(trunc);
  out.terms_ = std::move(terms);
  out.canonicalize();
  return out;
}

void QuasiLocalOperator::canonicalize() { canonicalize_terms(terms_, trunc_.dim()); }

QuasiLocalOperator& QuasiLocalOperator::operator+=(const QuasiLocalOperator& other) {
  require_same(*this, other);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

QuasiLocalOperator& QuasiLocalOperator::operator-=(const QuasiLocalOperator& other) {
  require_same(*this, other);
  for (const auto& t : other.terms_) terms_.push_back({-t.coefficient, t.product});
  canonicalize();
  return *this;
}

QuasiLocalOperator& QuasiLocalOperator::operator*=(Complex scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  canonicalize();
  return *this;
}

QuasiLocalOperator add(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  QuasiLocalOperator out = a;
  out += b;
  return out;
}

QuasiLocalOperator multiply(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  require_same(a, b);
  std::vector<OperatorTerm> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      OperatorTerm t{ta.coefficient * tb.coefficient, ta.product};
      for (const auto& [site, op] : tb.product.factors) {
        auto it = t.product.factors.find(site);
        if (it == t.product.factors.end()) {
          t.product.factors.emplace(site, op);
        } else {
          it->second.matrix = (it->second.matrix * op.matrix).eval();
        }
      }
      terms.push_back(std::move(t));
    }
  }
  return QuasiLocalOperator::from_terms(a.truncation(), std::move(terms));
}

QuasiLocalOperator adjoint(const QuasiLocalOperator& a) {
  std::vector<OperatorTerm> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    OperatorTerm out{std::conj(t.coefficient), {}};
    for (const auto& [site, op] : t.product.factors) {
      out.product.factors.emplace(site, SiteOperator{op.matrix.adjoint()});
    }
    terms.push_back(std::move(out));
  }
  return QuasiLocalOperator::from_terms(a.truncation(), std::move(terms));
}

QuasiLocalOperator commutator(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  QuasiLocalOperator ab = multiply(a, b);
  ab -= multiply(b, a);
  return ab;
}

std::vector<GridIndex> support(const QuasiLocalOperator& a) {
  std::set<GridIndex> sites;
  for (const auto& t : a.terms())
    for (const auto& [site, op] : t.product.factors) sites.insert(site);
  return {sites.begin(), sites.end()};
}

QuasiLocalOperator operator+(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  return add(a, b);
}

QuasiLocalOperator operator-(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  QuasiLocalOperator out = a;
  out -= b;
  return out;
}

QuasiLocalOperator operator*(const QuasiLocalOperator& a, const QuasiLocalOperator& b) {
  return multiply(a, b);
}

QuasiLocalOperator operator*(Complex scale, const QuasiLocalOperator& a) {
  QuasiLocalOperator out = a;
  out *= scale;
  return out;
}

Matrix embed_dense(const QuasiLocalOperator& a, const Window& window, std::size_t cap) {
  const int d = a.truncation().dim();
  const std::size_t dim = window.hilbert_dim(d, cap);
  if (dim == 0) {
    throw CapExceeded("window of " + std::to_string(window.size()) +
                      " sites exceeds the dense cap of " + std::to_string(cap));
  }
  for (const auto& site : support(a)) {
    if (!window.contains(site)) {
      throw WindowTooSmall("operator support " + site.to_string() + " lies outside the window");
    }
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix out = Matrix::Zero(n, n);
  const Matrix id = Matrix::Identity(d, d);
  for (const auto& t : a.terms()) {
    Matrix acc = Matrix::Identity(1, 1);
    for (const auto& site : window.sites()) {
      auto it = t.product.factors.find(site);
      const Matrix& f = it == t.product.factors.end() ? id : it->second.matrix;
      acc = Eigen::kroneckerProduct(acc, f).eval();
    }
    out += t.coefficient * acc;
  }
  return out;
}

QuasiLocalOperator from_dense(const Matrix& m, const Window& window, const FockTruncation& trunc,
                              double threshold) {
  const int d = trunc.dim();
  const std::size_t dim = window.hilbert_dim(d, static_cast<std::size_t>(m.rows()));
  if (dim == 0 || m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != m.rows()) {
    throw std::invalid_argument("matrix dimension does not match the window");
  }
  const std::size_t sites = window.size();
  const std::size_t d2 = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

  // Tensor indexed by per-site pairs p_s = r_s * d + c_s, first site most significant.
  std::size_t total = 1;
  for (std::size_t s = 0; s < sites; ++s) total *= d2;
  std::vector<Complex> x(total);
  std::vector<std::size_t> stride(sites, 1);
  for (std::size_t s = sites; s-- > 1;) stride[s - 1] = stride[s] * d2;
  std::vector<std::size_t> hstride(sites, 1);
  for (std::size_t s = sites; s-- > 1;) hstride[s - 1] = hstride[s] * static_cast<std::size_t>(d);

  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::size_t idx = 0;
      for (std::size_t s = 0; s < sites; ++s) {
        const std::size_t rs = (static_cast<std::size_t>(r) / hstride[s]) % d;
        const std::size_t cs = (static_cast<std::size_t>(c) / hstride[s]) % d;
        idx += (rs * d + cs) * stride[s];
      }
      x[idx] = m(r, c);
    }
  }

  const auto basis = site_operator_basis(d);
  std::vector<Complex> column(d2);
  for (std::size_t s = 0; s < sites; ++s) {
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride[s]) % d2 != 0) continue;
      for (std::size_t p = 0; p < d2; ++p) column[p] = x[base + p * stride[s]];
      for (std::size_t k = 0; k < d2; ++k) {
        Complex acc{};
        for (std::size_t p = 0; p < d2; ++p) {
          acc += std::conj(basis[k](static_cast<Eigen::Index>(p / d),
                                    static_cast<Eigen::Index>(p % d))) * column[p];
        }
        x[base + k * stride[s]] = acc;
      }
    }
  }

  const double id_scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<OperatorTerm> terms;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (std::abs(x[idx]) <= threshold) continue;
    OperatorTerm t{x[idx], {}};
    for (std::size_t s = 0; s < sites; ++s) {
      const std::size_t k = (idx / stride[s]) % d2;
      if (k == 0) {
        t.coefficient *= id_scale;
      } else {
        t.product.factors.emplace(window.sites()[s], SiteOperator{basis[k]});
      }
    }
    terms.push_back(std::move(t));
  }
  return QuasiLocalOperator::from_terms(trunc, std::move(terms));
}

Matrix partial_trace(const Matrix& m, const Window& window, int local_dim,
                     const std::vector<GridIndex>& traced) {
  const std::size_t sites = window.size();
  std::vector<bool> is_traced(sites, false);
  for (const auto& site : traced) is_traced[window.position(site)] = true;
  const auto d = static_cast<std::size_t>(local_dim);

  std::vector<std::size_t> hstride(sites, 1);
  for (std::size_t s = sites; s-- > 1;) hstride[s - 1] = hstride[s] * d;
  std::size_t kept_dim = 1;
  std::vector<std::size_t> kept_stride(sites, 0);
  for (std::size_t s = sites; s-- > 0;) {
    if (is_traced[s]) continue;
    kept_stride[s] = kept_dim;
    kept_dim *= d;
  }

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept_dim), static_cast<Eigen::Index>(kept_dim));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      bool diagonal = true;
      std::size_t kr = 0, kc = 0;
      for (std::size_t s = 0; s < sites; ++s) {
        const std::size_t rs = (static_cast<std::size_t>(r) / hstride[s]) % d;
        const std::size_t cs = (static_cast<std::size_t>(c) / hstride[s]) % d;
        if (is_traced[s]) {
          if (rs != cs) {
            diagonal = false;
            break;
          }
        } else {
          kr += rs * kept_stride[s];
          kc += cs * kept_stride[s];
        }
      }
      if (diagonal) out(static_cast<Eigen::Index>(kr), static_cast<Eigen::Index>(kc)) += m(r, c);
    }
  }
  return out;
}

}  // namespace qsector
