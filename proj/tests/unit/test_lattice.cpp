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

#include <gtest/gtest.h>

#include "qsector/lattice.hpp"

namespace qsector {
namespace {

TEST(FockTruncation, RejectsBadParameters) {
  EXPECT_THROW(FockTruncation(0), std::invalid_argument);
  EXPECT_THROW(FockTruncation(1, 0.0), std::invalid_argument);
  EXPECT_THROW(FockTruncation(1, 1.0, -2.0), std::invalid_argument);
  EXPECT_EQ(FockTruncation(3).dim(), 4);
  EXPECT_DOUBLE_EQ(FockTruncation(1, 4.0).field_scale(), 8.0);
}

TEST(Ladder, CommutatorIsIdentityBelowCutoff) {
  for (int n_max : {1, 2, 4}) {
    const FockTruncation trunc(n_max);
    const auto [a, ad] = ladder_ops(trunc);
    const Matrix comm = a.matrix * ad.matrix - ad.matrix * a.matrix;
    for (int k = 0; k < n_max; ++k) EXPECT_NEAR(std::abs(comm(k, k) - 1.0), 0.0, 1e-14);
    // Truncation artifact lives only in the top level.
    EXPECT_NEAR(comm(n_max, n_max).real(), -static_cast<double>(n_max), 1e-14);
  }
}

TEST(Ladder, NumberOperatorSpectrum) {
  const FockTruncation trunc(3);
  const auto [a, ad] = ladder_ops(trunc);
  EXPECT_LT((ad.matrix * a.matrix - number_op(trunc).matrix).norm(), 1e-14);
  for (int n = 0; n <= 3; ++n) {
    const Vector v = number_basis_state(trunc, n).amplitudes;
    EXPECT_LT((number_op(trunc).matrix * v - static_cast<double>(n) * v).norm(), 1e-15);
  }
  // Creation annihilates the top state.
  EXPECT_LT((ad.matrix * number_basis_state(trunc, 3).amplitudes).norm(), 1e-15);
  EXPECT_THROW(number_basis_state(trunc, 4), std::out_of_range);
  EXPECT_THROW(number_basis_state(trunc, -1), std::out_of_range);
}

TEST(SiteInner, ConjugateLinearInFirstArgument) {
  SiteState x{Vector(2)}, y{Vector(2)};
  x.amplitudes << Complex(1, 1), Complex(0, 2);
  y.amplitudes << Complex(2, 0), Complex(1, -1);
  const Complex expected = std::conj(Complex(1, 1)) * 2.0 + std::conj(Complex(0, 2)) * Complex(1, -1);
  EXPECT_NEAR(std::abs(site_inner(x, y) - expected), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(site_inner(y, x) - std::conj(expected)), 0.0, 1e-15);
}

TEST(Window, OrdersAndDeduplicates) {
  const Window w({{2, 0, 0}, {0, 0, 0}, {2, 0, 0}, {1, 0, 0}});
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.sites().front(), (GridIndex{0, 0, 0}));
  EXPECT_EQ(w.position({2, 0, 0}), 2u);
  EXPECT_THROW(w.position({5, 0, 0}), std::out_of_range);
}

TEST(Window, BoundaryOfChainAndSquare) {
  const auto chain = Window::chain(5, -2).boundary();
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].i1, -2);
  EXPECT_EQ(chain[1].i1, 2);
  const auto square = Window::box({0, 0, 0}, {2, 2, 0}).boundary();
  EXPECT_EQ(square.size(), 8u);
  EXPECT_TRUE(Window::chain(1).boundary().empty());
}

TEST(Window, HilbertDimensionRespectsCap) {
  const Window w = Window::chain(4);
  EXPECT_EQ(w.hilbert_dim(3, 1000), 81u);
  EXPECT_EQ(w.hilbert_dim(3, 80), 0u);
}

TEST(GridIndex, DistancesAndShift) {
  const GridIndex a{1, -2, 3};
  EXPECT_EQ(a.shifted(1, 4), (GridIndex{1, 2, 3}));
  EXPECT_THROW(static_cast<void>(a.shifted(3, 1)), std::out_of_range);
  EXPECT_EQ(chebyshev_distance(a, {}), 3);
  EXPECT_EQ(squared_distance(a, {}), 14);
}

}  // namespace
}  // namespace qsector
