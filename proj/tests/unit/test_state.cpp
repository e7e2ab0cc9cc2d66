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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qsector/errors.hpp"
#include "qsector/random.hpp"
#include "qsector/state.hpp"

namespace qsector {
namespace {

const FockTruncation kTrunc(1);

SiteState state(Complex c0, Complex c1) {
  Vector v(2);
  v << c0, c1;
  return {v / v.norm()};
}

SiteState gas() { return state(1.0, std::polar(1.0, std::numbers::pi / 4)); }

TEST(Background, ValidatesNormalization) {
  EXPECT_THROW(Background::uniform(kTrunc, SiteState{Vector::Ones(2)}), std::invalid_argument);
  EXPECT_THROW(Background::uniform(kTrunc, SiteState{Vector::Ones(3) / std::sqrt(3.0)}),
               std::invalid_argument);
  EXPECT_THROW(Background::periodic(kTrunc, {2, 1, 1}, {gas()}), std::invalid_argument);
}

TEST(Background, PeriodicLookupWrapsNegativeSites) {
  const auto a = state(1, 0), b = state(0, 1);
  const auto bg = Background::periodic(kTrunc, {2, 1, 1}, {a, b});
  EXPECT_EQ(bg.state_at({-1, 0, 0}).amplitudes, b.amplitudes);
  EXPECT_EQ(bg.state_at({-2, 0, 0}).amplitudes, a.amplitudes);
  EXPECT_EQ(bg.state_at({3, 0, 0}).amplitudes, b.amplitudes);
}

TEST(SectorId, IgnoresPhasesPatchesAndRedundantPeriods) {
  const auto g = gas();
  const auto u = Background::uniform(kTrunc, g);
  const auto phased = Background::uniform(kTrunc, {std::polar(1.0, 0.7) * g.amplitudes});
  EXPECT_EQ(u.sector(), phased.sector());
  const auto doubled = Background::periodic(kTrunc, {2, 1, 1}, {g, g});
  EXPECT_EQ(u.sector(), doubled.sector());
  EXPECT_TRUE(doubled.sector().is_uniform());
  const auto patched = u.with_patches({{{3, 0, 0}, state(0, 1)}});
  EXPECT_EQ(u.sector(), patched.sector());
  EXPECT_FALSE(u.sector() == Background::uniform(kTrunc, state(1, 0)).sector());
  EXPECT_FALSE(u.sector() == u.conjugated().sector());
}

TEST(LocalVector, InnerProductMatchesDenseOracle) {
  RandomSource rng(4);
  const Window w = Window::chain(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto bg = make_background(Background::uniform(kTrunc, rng.site_state(kTrunc)));
    const auto u = rng.local_vector(bg, w.sites(), 3, 3);
    const auto v = rng.local_vector(bg, w.sites(), 3, 3);
    const Complex expected = oracle::dense(u, w).dot(oracle::dense(v, w));
    EXPECT_LT(std::abs(inner_product(u, v) - expected), 1e-12);
    EXPECT_LT(std::abs(norm(v) - oracle::dense(v, w).norm()), 1e-12);
    EXPECT_LT((dense_state(v, w) - oracle::dense(v, w)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(LocalVector, ApplyMatchesDenseOracle) {
  RandomSource rng(6);
  const Window w = Window::chain(3);
  const FockTruncation t2(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto bg = make_background(Background::uniform(t2, rng.site_state(t2)));
    const auto v = rng.local_vector(bg, w.sites(), 2, 2);
    const auto a = rng.quasi_local(t2, w.sites(), 3, 2);
    const Vector expected = oracle::dense(a, w) * oracle::dense(v, w);
    EXPECT_LT((oracle::dense(apply(a, v), w) - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(apply(a, v).sector(), v.sector());
  }
}

TEST(LocalVector, ProductFormSumMerges) {
  const auto bg = make_background(Background::uniform(kTrunc, state(1, 0)));
  const auto x = state(1, 2), y = state(3, -1);
  auto v = LocalVector::from({bg, {{{0, 0, 0}, x}, {{1, 0, 0}, y}}});
  v += LocalVector::from({bg, {{{0, 0, 0}, x}, {{1, 0, 0}, x}}});
  EXPECT_EQ(v.terms().size(), 1u);
  const auto zero = linear_combine(1.0, v, -1.0, v);
  EXPECT_TRUE(zero.is_zero());
}

TEST(LocalVector, PatchSitesContributeToInnerProducts) {
  const auto base = Background::uniform(kTrunc, state(1, 0));
  const auto patched = make_background(base.with_patches({{{2, 0, 0}, state(1, 1)}}));
  const auto plain = make_background(base);
  // The background vector of `patched` seen from `plain`.
  const auto v = LocalVector::of_background(patched);
  const auto u = LocalVector::of_background(plain);
  EXPECT_NEAR(std::abs(inner_product(u, v)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(norm(v), 1.0, 1e-15);
}

TEST(LocalVector, CrossSectorProductsAreRefusedOrZero) {
  const auto bg1 = make_background(Background::uniform(kTrunc, gas()));
  const auto bg2 = make_background(bg1->conjugated());
  const auto v1 = LocalVector::of_background(bg1);
  const auto v2 = LocalVector::of_background(bg2);
  EXPECT_THROW(inner_product(v1, v2), SectorMismatch);
  EXPECT_THROW(linear_combine(1.0, v1, 1.0, v2), SectorMismatch);
  EXPECT_EQ(sector_inner_product(v1, v2), Complex(0.0));
  EXPECT_FALSE(equivalent(PureStateVector{bg1, {}}, *bg2));
  EXPECT_TRUE(equivalent(PureStateVector{bg1, {{{0, 0, 0}, state(0, 1)}}}, *bg1));
}

TEST(Overlap, GasAgainstReversalDecaysGeometrically) {
  const auto rho = Background::uniform(kTrunc, gas());
  const auto rev = rho.conjugated();
  const double q = std::cos(std::numbers::pi / 4);
  const auto profile = overlap_profile(rho, rev, 30, 1);
  for (int n = 0; n <= 30; ++n) {
    const double expected = std::pow(q, 2 * n + 1);
    EXPECT_NEAR(std::abs(profile[static_cast<std::size_t>(n)]) / expected, 1.0, 1e-12);
  }
  EXPECT_LE(std::abs(profile.back()), 1e-9);
  EXPECT_NEAR(std::abs(cross_sector_overlap_partial(rho, rev, 7, 1)), std::pow(q, 15), 1e-15);
}

TEST(Overlap, HigherDimensionsCountSites) {
  const auto rho = Background::uniform(kTrunc, gas());
  const auto rev = rho.conjugated();
  const double q = std::cos(std::numbers::pi / 4);
  EXPECT_EQ(sites_within(2, 2), 25u);
  EXPECT_NEAR(std::abs(cross_sector_overlap_partial(rho, rev, 2, 2)), std::pow(q, 25), 1e-15);
  EXPECT_NEAR(std::abs(cross_sector_overlap_partial(rho, rho, 4, 3)), 1.0, 1e-12);
}

TEST(LocalVector, SingleSiteExamples) {
  const auto vacuum = make_background(Background::uniform(kTrunc, state(1, 0)));
  const auto bg = LocalVector::of_background(vacuum);
  EXPECT_NEAR(std::abs(inner_product(bg, bg) - 1.0), 0.0, 1e-15);
  const auto plus = LocalVector::from({vacuum, {{{0, 0, 0}, state(1, 1)}}});
  EXPECT_NEAR(std::abs(inner_product(bg, plus)), 1 / std::sqrt(2.0), 1e-15);
  const auto one = LocalVector::from({vacuum, {{{0, 0, 0}, state(0, 1)}}});
  EXPECT_NEAR(std::abs(inner_product(bg, one)), 0.0, 1e-15);
  EXPECT_NEAR(norm(LocalVector::from({vacuum, {{{4, 0, 0}, state(0, 1)}}}, Complex(0, -3))), 3.0,
              1e-14);
  const auto same = linear_combine(1.0, plus, 0.0, one);
  EXPECT_NEAR(std::abs(inner_product(same, plus) - 1.0), 0.0, 1e-15);
}

TEST(LocalVector, ApplyOnVacuum) {
  const FockTruncation t(1, 0.5);
  const auto vacuum = make_background(Background::uniform(t, number_basis_state(t, 0)));
  const auto v = LocalVector::of_background(vacuum);
  const auto a = ladder_ops(t);
  // psi*(I) |vac> = dx^{3/2} |1> at I.
  const auto created = apply(QuasiLocalOperator::site(t, {2, 0, 0}, a.raise, t.field_scale()), v);
  const auto expected = LocalVector::from({vacuum, {{{2, 0, 0}, number_basis_state(t, 1)}}},
                                          t.field_scale());
  const auto diff = linear_combine(1.0, created, -1.0, expected);
  EXPECT_LT(norm(diff), 1e-15);
  EXPECT_TRUE(apply(QuasiLocalOperator::site(t, {2, 0, 0}, number_op(t)), v).is_zero());
  EXPECT_NEAR(norm(apply(QuasiLocalOperator::identity(t), v)), 1.0, 1e-15);
}

TEST(LocalVector, PatchedPeriodicBackgroundIsEquivalent) {
  const auto periodic = Background::periodic(kTrunc, {2, 1, 1}, {state(1, 0), gas()});
  const auto patched = make_background(periodic.with_patches({{{1, 0, 0}, state(0, 1)}}));
  EXPECT_TRUE(equivalent(PureStateVector{patched, {}}, periodic));
  EXPECT_FALSE(equivalent(PureStateVector{make_background(Background::uniform(kTrunc, state(0, 1))), {}},
                          Background::uniform(kTrunc, state(1, 0))));
}

TEST(DenseState, RoundTrip) {
  RandomSource rng(12);
  const Window w = Window::chain(3);
  const auto bg = make_background(Background::uniform(kTrunc, rng.site_state(kTrunc)));
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = rng.local_vector(bg, w.sites(), 3, 3);
    const Vector psi = dense_state(v, w);
    const auto back = from_dense_state(psi, w, bg);
    EXPECT_LT((dense_state(back, w) - psi).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto far = LocalVector::from({bg, {{{9, 0, 0}, state(0, 1)}}});
  EXPECT_THROW(dense_state(far, w), WindowTooSmall);
}

}  // namespace
}  // namespace qsector
