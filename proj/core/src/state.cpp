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

#include "qsector/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsector/detail/canonical.hpp"
#include "qsector/errors.hpp"

namespace qsector {
namespace {

int wrap(int i, int p) { return ((i % p) + p) % p; }

std::size_t pattern_index(const std::array<int, 3>& period, int c1, int c2, int c3) {
  return static_cast<std::size_t>(c1 + period[0] * (c2 + period[1] * c3));
}

Vector canonical_phase(const Vector& v) {
  Vector out = v / v.norm();
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    if (std::abs(out(k)) > SectorId::kTolerance) {
      out *= std::conj(out(k)) / std::abs(out(k));
      out(k) = std::abs(out(k));
      break;
    }
  }
  return out;
}

bool same_state(const Vector& a, const Vector& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Shrinks each period to the smallest divisor consistent with the pattern.
void reduce_period(std::array<int, 3>& period, std::vector<Vector>& pattern) {
  for (int axis = 0; axis < 3; ++axis) {
    for (int q = 1; q < period[axis]; ++q) {
      if (period[axis] % q != 0) continue;
      bool repeats = true;
      for (int c3 = 0; c3 < period[2] && repeats; ++c3)
        for (int c2 = 0; c2 < period[1] && repeats; ++c2)
          for (int c1 = 0; c1 < period[0] && repeats; ++c1) {
            std::array<int, 3> c{c1, c2, c3};
            std::array<int, 3> r = c;
            r[axis] = c[axis] % q;
            repeats = same_state(pattern[pattern_index(period, c[0], c[1], c[2])],
                                 pattern[pattern_index(period, r[0], r[1], r[2])],
                                 SectorId::kTolerance);
          }
      if (!repeats) continue;
      std::array<int, 3> reduced = period;
      reduced[axis] = q;
      std::vector<Vector> smaller(static_cast<std::size_t>(reduced[0] * reduced[1] * reduced[2]));
      for (int c3 = 0; c3 < reduced[2]; ++c3)
        for (int c2 = 0; c2 < reduced[1]; ++c2)
          for (int c1 = 0; c1 < reduced[0]; ++c1)
            smaller[pattern_index(reduced, c1, c2, c3)] = pattern[pattern_index(period, c1, c2, c3)];
      period = reduced;
      pattern = std::move(smaller);
      break;
    }
  }
}

struct StateTerm {
  Complex coefficient;
  std::map<GridIndex, Vector> factors;
};

struct StatePolicy {
  const Background* background;

  Vector reference(const GridIndex& site) const { return background->state_at(site).amplitudes; }
  std::map<GridIndex, Vector>& factors(StateTerm& t) const { return t.factors; }
  Complex& coefficient(StateTerm& t) const { return t.coefficient; }
};

void check_state(const SiteState& s, const FockTruncation& trunc) {
  if (s.amplitudes.size() != trunc.dim()) {
    throw std::invalid_argument("site state length does not match the truncation");
  }
  if (!s.amplitudes.allFinite()) throw std::invalid_argument("site state has non-finite entries");
}

// Sites where the two backgrounds might assign different states.
std::set<GridIndex> patch_sites(const Background& a, const Background& b) {
  std::set<GridIndex> out;
  for (const auto& [site, s] : a.patches()) out.insert(site);
  for (const auto& [site, s] : b.patches()) out.insert(site);
  return out;
}

}  // namespace

bool SectorId::operator==(const SectorId& other) const {
  if (period_ != other.period_ || pattern_.size() != other.pattern_.size()) return false;
  for (std::size_t k = 0; k < pattern_.size(); ++k) {
    if (!same_state(pattern_[k], other.pattern_[k], kTolerance)) return false;
  }
  return true;
}

std::string SectorId::describe() const {
  std::ostringstream os;
  os << (is_uniform() ? "uniform" : "periodic") << " period=(" << period_[0] << "," << period_[1]
     << "," << period_[2] << ")";
  for (const auto& v : pattern_) {
    os << " [";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (k) os << ",";
      os << v(k).real() << (v(k).imag() < 0 ? "" : "+") << v(k).imag() << "i";
    }
    os << "]";
  }
  return os.str();
}

Background Background::uniform(const FockTruncation& trunc, const SiteState& state) {
  return periodic(trunc, {1, 1, 1}, {state});
}

Background Background::periodic(const FockTruncation& trunc, const std::array<int, 3>& period,
                                std::vector<SiteState> pattern) {
  Background bg(trunc);
  bg.period_ = period;
  bg.pattern_ = std::move(pattern);
  bg.rule_ = bg.pattern_.size() == 1 ? BackgroundRule::uniform : BackgroundRule::periodic;
  bg.validate();
  return bg;
}

Background Background::explicit_sites(const FockTruncation& trunc,
                                      std::map<GridIndex, SiteState> sites,
                                      const SiteState& fallback) {
  return uniform(trunc, fallback).with_patches(sites);
}

Background Background::with_patches(const std::map<GridIndex, SiteState>& patches) const {
  Background bg = *this;
  for (const auto& [site, s] : patches) bg.patches_[site] = s;
  bg.rule_ = BackgroundRule::explicit_sites;
  bg.validate();
  return bg;
}

void Background::validate() const {
  for (int p : period_) {
    if (p < 1) throw std::invalid_argument("background period entries must be >= 1");
  }
  if (pattern_.size() != static_cast<std::size_t>(period_[0] * period_[1] * period_[2])) {
    throw std::invalid_argument("background pattern size must equal the period volume");
  }
  auto check = [this](const SiteState& s) {
    check_state(s, trunc_);
    if (std::abs(s.amplitudes.norm() - 1.0) > kNormTolerance) {
      throw std::invalid_argument("background site states must be normalized");
    }
  };
  for (const auto& s : pattern_) check(s);
  for (const auto& [site, s] : patches_) check(s);
}

const SiteState& Background::base_state_at(const GridIndex& site) const {
  return pattern_[pattern_index(period_, wrap(site.i1, period_[0]), wrap(site.i2, period_[1]),
                                wrap(site.i3, period_[2]))];
}

SiteState Background::state_at(const GridIndex& site) const {
  auto it = patches_.find(site);
  return it == patches_.end() ? base_state_at(site) : it->second;
}

Background Background::conjugated() const {
  Background bg = *this;
  for (auto& s : bg.pattern_) s = site_conjugate(s);
  for (auto& [site, s] : bg.patches_) s = site_conjugate(s);
  return bg;
}

SectorId Background::sector() const {
  SectorId id;
  id.period_ = period_;
  id.pattern_.reserve(pattern_.size());
  for (const auto& s : pattern_) id.pattern_.push_back(canonical_phase(s.amplitudes));
  reduce_period(id.period_, id.pattern_);
  return id;
}

BackgroundPtr make_background(Background bg) {
  return std::make_shared<const Background>(std::move(bg));
}

LocalVector::LocalVector(BackgroundPtr background) : background_(std::move(background)) {
  if (!background_) throw std::invalid_argument("LocalVector requires a background");
}

LocalVector LocalVector::of_background(BackgroundPtr background) {
  std::vector<VectorTerm> terms;
  terms.push_back({Complex{1.0, 0.0}, {}});
  return from_terms(std::move(background), std::move(terms));
}

LocalVector LocalVector::from(const PureStateVector& v, Complex coefficient) {
  std::vector<VectorTerm> terms;
  terms.push_back({coefficient, v.overrides});
  return from_terms(v.background, std::move(terms));
}

LocalVector LocalVector::from_terms(BackgroundPtr background, std::vector<VectorTerm> terms) {
  LocalVector out(std::move(background));
  for (const auto& t : terms)
    for (const auto& [site, s] : t.overrides) check_state(s, out.background_->truncation());
  out.terms_ = std::move(terms);
  out.canonicalize();
  return out;
}

std::vector<GridIndex> LocalVector::support() const {
  std::set<GridIndex> sites;
  for (const auto& t : terms_)
    for (const auto& [site, s] : t.overrides) sites.insert(site);
  return {sites.begin(), sites.end()};
}

void LocalVector::canonicalize() {
  std::vector<StateTerm> work;
  work.reserve(terms_.size());
  for (auto& t : terms_) {
    StateTerm s{t.coefficient, {}};
    for (auto& [site, st] : t.overrides) s.factors.emplace(site, std::move(st.amplitudes));
    work.push_back(std::move(s));
  }
  const StatePolicy policy{background_.get()};
  detail::Canonicalizer<StateTerm, Vector, StatePolicy>(policy, kPruneThreshold).run(work);
  terms_.clear();
  terms_.reserve(work.size());
  for (auto& s : work) {
    VectorTerm t{s.coefficient, {}};
    for (auto& [site, v] : s.factors) t.overrides.emplace(site, SiteState{std::move(v)});
    terms_.push_back(std::move(t));
  }
}

LocalVector& LocalVector::operator+=(const LocalVector& other) {
  if (other.background_ == background_) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    canonicalize();
    return *this;
  }
  if (!(background_->truncation() == other.background_->truncation())) throw TruncationMismatch();
  if (!(sector() == other.sector())) {
    throw SectorMismatch("cannot add vectors of inequivalent backgrounds");
  }
  // Re-express `other` over this background: wherever the two rules may
  // disagree, pin other's background state as an explicit override.
  const auto sites = patch_sites(*background_, *other.background_);
  for (const auto& t : other.terms_) {
    VectorTerm moved = t;
    for (const auto& site : sites) {
      if (!moved.overrides.count(site)) moved.overrides.emplace(site, other.background_->state_at(site));
    }
    terms_.push_back(std::move(moved));
  }
  canonicalize();
  return *this;
}

LocalVector& LocalVector::operator*=(Complex scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  canonicalize();
  return *this;
}

Complex inner_product(const LocalVector& u, const LocalVector& v) {
  if (!(u.background().truncation() == v.background().truncation())) throw TruncationMismatch();
  if (!(u.sector() == v.sector())) {
    throw SectorMismatch("inner product between inequivalent sectors");
  }
  std::set<GridIndex> sites = patch_sites(u.background(), v.background());
  for (const auto& s : u.support()) sites.insert(s);
  for (const auto& s : v.support()) sites.insert(s);

  Complex total{};
  for (const auto& tu : u.terms()) {
    for (const auto& tv : v.terms()) {
      Complex factor = std::conj(tu.coefficient) * tv.coefficient;
      for (const auto& site : sites) {
        auto iu = tu.overrides.find(site);
        auto iv = tv.overrides.find(site);
        const SiteState su = iu == tu.overrides.end() ? u.background().state_at(site) : iu->second;
        const SiteState sv = iv == tv.overrides.end() ? v.background().state_at(site) : iv->second;
        factor *= site_inner(su, sv);
        if (factor == Complex{}) break;
      }
      total += factor;
    }
  }
  return total;
}

Complex sector_inner_product(const LocalVector& u, const LocalVector& v) {
  if (!(u.sector() == v.sector())) return Complex{0.0, 0.0};
  return inner_product(u, v);
}

double norm(const LocalVector& v) {
  return std::sqrt(std::max(0.0, inner_product(v, v).real()));
}

LocalVector linear_combine(Complex c, const LocalVector& v1, Complex d, const LocalVector& v2) {
  LocalVector out = v1;
  out *= c;
  LocalVector scaled = v2;
  scaled *= d;
  out += scaled;
  return out;
}

LocalVector apply(const QuasiLocalOperator& a, const LocalVector& v) {
  if (!(a.truncation() == v.background().truncation())) throw TruncationMismatch();
  std::vector<VectorTerm> terms;
  terms.reserve(a.terms().size() * v.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tv : v.terms()) {
      VectorTerm t{ta.coefficient * tv.coefficient, tv.overrides};
      for (const auto& [site, op] : ta.product.factors) {
        auto it = t.overrides.find(site);
        if (it == t.overrides.end()) {
          t.overrides.emplace(site, SiteState{op.matrix * v.background().state_at(site).amplitudes});
        } else {
          it->second.amplitudes = (op.matrix * it->second.amplitudes).eval();
        }
      }
      terms.push_back(std::move(t));
    }
  }
  return LocalVector::from_terms(v.background_ptr(), std::move(terms));
}

bool equivalent(const PureStateVector& v, const Background& background) {
  return v.background->sector() == background.sector();
}

std::size_t sites_within(int radius, int dimension) {
  std::size_t n = 1;
  for (int a = 0; a < dimension; ++a) n *= static_cast<std::size_t>(2 * radius + 1);
  return n;
}

std::vector<Complex> overlap_profile(const Background& rho1, const Background& rho2,
                                     int max_radius, int dimension) {
  if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (max_radius < 0) throw std::invalid_argument("radius must be >= 0");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(max_radius) + 1);
  Complex acc{1.0, 0.0};
  for (int n = 0; n <= max_radius; ++n) {
    const int r2 = dimension > 1 ? n : 0;
    const int r3 = dimension > 2 ? n : 0;
    for (int a = -n; a <= n; ++a)
      for (int b = -r2; b <= r2; ++b)
        for (int c = -r3; c <= r3; ++c) {
          const GridIndex site{a, b, c};
          if (chebyshev_distance(site, {}) != n) continue;
          acc *= site_inner(rho2.state_at(site), rho1.state_at(site));
        }
    out.push_back(acc);
  }
  return out;
}

Complex cross_sector_overlap_partial(const Background& rho1, const Background& rho2, int radius,
                                     int dimension) {
  return overlap_profile(rho1, rho2, radius, dimension).back();
}

Vector dense_state(const LocalVector& v, const Window& window, std::size_t cap) {
  const int d = v.background().truncation().dim();
  const std::size_t dim = window.hilbert_dim(d, cap);
  if (dim == 0) throw CapExceeded("window state dimension exceeds the dense cap");
  for (const auto& site : v.support()) {
    if (!window.contains(site)) {
      throw WindowTooSmall("vector override " + site.to_string() + " lies outside the window");
    }
  }
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& t : v.terms()) {
    Vector acc = Vector::Ones(1);
    for (const auto& site : window.sites()) {
      auto it = t.overrides.find(site);
      const Vector s = it == t.overrides.end() ? v.background().state_at(site).amplitudes
                                               : it->second.amplitudes;
      acc = Eigen::kroneckerProduct(acc, s).eval();
    }
    out += t.coefficient * acc;
  }
  return out;
}

LocalVector from_dense_state(const Vector& psi, const Window& window, BackgroundPtr background,
                             double threshold) {
  const int d = background->truncation().dim();
  const std::size_t dim = window.hilbert_dim(d, static_cast<std::size_t>(psi.size()));
  if (dim == 0 || psi.size() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("vector length does not match the window");
  }
  const std::size_t sites = window.size();
  std::vector<VectorTerm> terms;
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    if (std::abs(psi(k)) <= threshold) continue;
    VectorTerm t{psi(k), {}};
    std::size_t rest = static_cast<std::size_t>(k);
    for (std::size_t s = sites; s-- > 0;) {
      const int n = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
      t.overrides.emplace(window.sites()[s], number_basis_state(background->truncation(), n));
    }
    terms.push_back(std::move(t));
  }
  return LocalVector::from_terms(std::move(background), std::move(terms));
}

}  // namespace qsector
