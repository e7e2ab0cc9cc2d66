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

// Canonical form for finite sums of site-factorized terms. Shared by
// QuasiLocalOperator (factors are site matrices, implicit factor = identity)
// and LocalVector (factors are site vectors, implicit factor = background).

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "qsector/lattice.hpp"

namespace qsector::detail {

/// Scales `x` so that its pivot entry is exactly 1 and returns the pivot.
/// The pivot is the first entry (storage order) whose modulus is within a
/// relative 1e-9 of the largest. Returns 0 for an all-zero input.
template <class Dense>
Complex normalize_pivot(Dense& x) {
  const double largest = x.cwiseAbs().maxCoeff();
  if (!(largest > 0.0)) return Complex{0.0, 0.0};
  const double threshold = largest * (1.0 - 1e-9);
  Eigen::Index pivot = 0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (std::abs(x.data()[k]) >= threshold) {
      pivot = k;
      break;
    }
  }
  const Complex p = x.data()[pivot];
  x /= p;
  x.data()[pivot] = Complex{1.0, 0.0};
  return p;
}

template <class Dense>
bool nearly_equal(const Dense& a, const Dense& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

/// Policy requirements:
///   Dense reference(const GridIndex&) const  -- raw implicit factor at a site
///   std::map<GridIndex, Dense>& factors(Term&) const
///   Complex& coefficient(Term&) const
/// Dense is an Eigen dense type (matrix or vector).
template <class Term, class Dense, class Policy>
class Canonicalizer {
 public:
  static constexpr double kSameTol = 1e-14;

  Canonicalizer(const Policy& policy, double prune) : policy_(policy), prune_(prune) {}

  void run(std::vector<Term>& terms) const {
    std::vector<Term> kept;
    kept.reserve(terms.size());
    for (auto& t : terms) {
      if (normalize_term(t)) kept.push_back(std::move(t));
    }
    merge(kept);
    std::vector<Term> out;
    out.reserve(kept.size());
    for (auto& t : kept) {
      if (std::abs(policy_.coefficient(t)) > prune_) out.push_back(std::move(t));
    }
    terms = std::move(out);
  }

 private:
  struct Reference {
    Dense normalized;
    Complex pivot;
  };

  Reference reference(const GridIndex& site) const {
    Reference r{policy_.reference(site), Complex{}};
    r.pivot = normalize_pivot(r.normalized);
    return r;
  }

  // Normalizes one stored factor in place; returns false if the term vanished.
  bool settle_factor(Term& t, const GridIndex& site) const {
    auto& fs = policy_.factors(t);
    auto it = fs.find(site);
    const Complex p = normalize_pivot(it->second);
    if (p == Complex{}) return false;
    policy_.coefficient(t) *= p;
    const Reference ref = reference(site);
    if (ref.pivot != Complex{} && nearly_equal(it->second, ref.normalized, kSameTol)) {
      policy_.coefficient(t) /= ref.pivot;
      fs.erase(it);
    }
    return true;
  }

  bool normalize_term(Term& t) const {
    if (std::abs(policy_.coefficient(t)) <= prune_) return false;
    std::vector<GridIndex> sites;
    for (const auto& [site, f] : policy_.factors(t)) sites.push_back(site);
    for (const auto& site : sites) {
      if (!settle_factor(t, site)) return false;
    }
    return true;
  }

  // Number of sites where the two terms' factors differ, capped at 2; the
  // last differing site is written to `where`.
  int differences(Term& a, Term& b, GridIndex& where) const {
    auto& fa = policy_.factors(a);
    auto& fb = policy_.factors(b);
    int count = 0;
    auto ia = fa.begin();
    auto ib = fb.begin();
    while (ia != fa.end() || ib != fb.end()) {
      if (ib == fb.end() || (ia != fa.end() && ia->first < ib->first)) {
        where = ia->first;
        ++ia;
        ++count;
      } else if (ia == fa.end() || ib->first < ia->first) {
        where = ib->first;
        ++ib;
        ++count;
      } else {
        if (!nearly_equal(ia->second, ib->second, kSameTol)) {
          where = ia->first;
          ++count;
        }
        ++ia;
        ++ib;
      }
      if (count > 1) return count;
    }
    return count;
  }

  Dense value_at(Term& t, const GridIndex& site) const {
    auto& fs = policy_.factors(t);
    auto it = fs.find(site);
    return it == fs.end() ? policy_.reference(site) : it->second;
  }

  // Folds b into a. Returns false if the merged term vanished.
  bool absorb(Term& a, Term& b) const {
    GridIndex site;
    const int diff = differences(a, b, site);
    if (diff == 0) {
      policy_.coefficient(a) += policy_.coefficient(b);
      return std::abs(policy_.coefficient(a)) > prune_;
    }
    Dense combined = policy_.coefficient(a) * value_at(a, site) +
                     policy_.coefficient(b) * value_at(b, site);
    policy_.coefficient(a) = Complex{1.0, 0.0};
    policy_.factors(a)[site] = std::move(combined);
    return settle_factor(a, site);
  }

  void merge(std::vector<Term>& terms) const {
    bool changed = true;
    while (changed) {
      changed = false;
      std::size_t i = 0;
      while (i < terms.size()) {
        bool dropped = false;
        std::size_t j = i + 1;
        while (j < terms.size()) {
          GridIndex site;
          if (differences(terms[i], terms[j], site) > 1) {
            ++j;
            continue;
          }
          const bool alive = absorb(terms[i], terms[j]);
          terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          if (!alive) {
            terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
            dropped = true;
            break;
          }
          j = i + 1;
        }
        if (!dropped) ++i;
      }
    }
  }

  const Policy& policy_;
  double prune_;
};

}  // namespace qsector::detail
