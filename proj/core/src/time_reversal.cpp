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

#include "qsector/time_reversal.hpp"

#include <algorithm>
#include <cmath>

#include "qsector/errors.hpp"
#include "qsector/master.hpp"

namespace qsector {

QuasiLocalOperator reverse_operator(const QuasiLocalOperator& a) {
  std::vector<OperatorTerm> terms = a.terms();
  for (auto& term : terms) {
    term.coefficient = std::conj(term.coefficient);
    for (auto& [site, op] : term.product.factors) op.matrix = op.matrix.conjugate().eval();
  }
  return QuasiLocalOperator::from_terms(a.truncation(), std::move(terms));
}

Background reverse_background(const Background& rho) { return rho.conjugated(); }

LocalVector reverse_state(const LocalVector& v) {
  BackgroundPtr bg = make_background(v.background().conjugated());
  std::vector<VectorTerm> terms = v.terms();
  for (auto& term : terms) {
    term.coefficient = std::conj(term.coefficient);
    for (auto& [site, s] : term.overrides) s = site_conjugate(s);
  }
  return LocalVector::from_terms(std::move(bg), std::move(terms));
}

std::string to_string(SectorVerdict verdict) {
  return verdict == SectorVerdict::invariant ? "invariant" : "jumped";
}

ReversalClassification sector_of_reversal(const Background& rho) {
  ReversalClassification out;
  double worst_recurring = 0.0;
  bool any_jump = false;
  for (const auto& s : rho.pattern()) {
    const double q = std::abs(site_inner(s, site_conjugate(s)));
    out.pattern_overlaps.push_back(q);
    if (q >= 1.0 - kInvariantTolerance) continue;
    if (q > 1.0 - kUndecidableBand) {
      throw UndecidableSector("per-site overlap " + std::to_string(q) +
                              " is too close to 1 to classify");
    }
    any_jump = true;
    worst_recurring = std::max(worst_recurring, q);
  }
  if (any_jump) {
    out.verdict = SectorVerdict::jumped;
    out.q = worst_recurring;
  }
  return out;
}

double check_TLT_equals_L(const HamiltonianSpec& spec, const Window& window, std::size_t cap) {
  const Superoperator l = build_superoperator(spec, window, cap);
  return (l.matrix.conjugate() - l.matrix).norm();
}

ReversalParity reversal_parity(const QuasiLocalOperator& a, const Window& window, double tol) {
  const Matrix m = embed_dense(a, window);
  const Matrix t = embed_dense(reverse_operator(a), window);
  const double scale = m.norm();
  ReversalParity p;
  if (scale == 0.0) {
    p.sign = 1;
    return p;
  }
  p.even_residual = (t - m).norm() / scale;
  p.odd_residual = (t + m).norm() / scale;
  if (p.even_residual <= tol) {
    p.sign = 1;
  } else if (p.odd_residual <= tol) {
    p.sign = -1;
  }
  return p;
}

std::vector<SignTableRow> reversal_sign_table(const HamiltonianSpec& spec, const GridIndex& site) {
  auto around = [&](const QuasiLocalOperator& a) {
    const auto sites = support(a);
    if (sites.empty()) return Window({site});
    return Window(sites);
  };
  std::vector<SignTableRow> rows;
  const QuasiLocalOperator n = number_density(spec, site);
  const QuasiLocalOperator p = momentum_density(spec, site, 0);
  const QuasiLocalOperator h = energy_density(spec, site);
  rows.push_back({"N", reversal_parity(n, around(n))});
  rows.push_back({"P", reversal_parity(p, around(p))});
  rows.push_back({"H0", reversal_parity(h, around(h))});
  return rows;
}

}  // namespace qsector
