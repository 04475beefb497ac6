// Copyright 2026 The parrep Authors.
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

#include <cmath>
#include <vector>

#include "parrep/density.hpp"
#include "parrep/error.hpp"
#include "parrep/rng.hpp"

namespace parrep {
namespace {

GridDensity tent() {
  // Triangle on [0, 2] peaking at 1.
  return GridDensity({0.0, 1.0, 2.0}, {0.0, 5.0, 0.0});
}

TEST(GridDensityTest, NormalizesAndIntegrates) {
  const GridDensity g = tent();
  EXPECT_DOUBLE_EQ(g.density()[1], 1.0);
  EXPECT_DOUBLE_EQ(g.cdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(g.cdf(1.0), 0.5);
  EXPECT_DOUBLE_EQ(g.cdf(2.0), 1.0);
  EXPECT_DOUBLE_EQ(g.cdf(0.5), 0.125);
  EXPECT_DOUBLE_EQ(g.cdf(-3.0), 0.0);
  EXPECT_DOUBLE_EQ(g.cdf(7.0), 1.0);
  EXPECT_NEAR(g.mean(), 1.0, 1e-15);
}

TEST(GridDensityTest, QuantileInvertsCdf) {
  const GridDensity g({0.0, 0.3, 1.0, 1.7, 2.0}, {0.0, 2.0, 1.0, 3.0, 0.0});
  for (double u = 0.01; u < 1.0; u += 0.0173) {
    const double x = g.quantile(u);
    EXPECT_GT(x, g.lo());
    EXPECT_LT(x, g.hi());
    EXPECT_NEAR(g.cdf(x), u, 1e-12);
  }
}

TEST(GridDensityTest, ClampsRoundoffNegatives) {
  const GridDensity g({0.0, 1.0, 2.0}, {-1e-14, 1.0, 0.0});
  EXPECT_EQ(g.density()[0], 0.0);
  EXPECT_THROW(GridDensity({0.0, 1.0, 2.0}, {-0.1, 1.0, 0.0}), InvalidArgument);
}

TEST(GridDensityTest, RejectsMalformedInput) {
  EXPECT_THROW(GridDensity({0.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(GridDensity({0.0, 1.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(GridDensity({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(GridDensity({0.0, 1.0}, {0.0, 0.0}), InvalidArgument);
}

TEST(GridDensityTest, SamplesFollowCdf) {
  const GridDensity g = tent();
  NormalStream s(3, 1);
  const int n = 100000;
  int below = 0;
  for (int i = 0; i < n; ++i) below += g.sample(s) <= 0.5;
  EXPECT_NEAR(static_cast<double>(below) / n, 0.125, 5.0 * std::sqrt(0.125 * 0.875 / n));
}

TEST(InitialLawTest, DiracSamplesItsPoint) {
  const InitialLaw law = DiracLaw{0.1};
  NormalStream s(1, 1);
  EXPECT_EQ(sample(law, s), 0.1);
  EXPECT_EQ(s.blocks_used(), 0u);
  EXPECT_TRUE(is_dirac(law));
  EXPECT_EQ(describe(law), "dirac:0.10000000000000001");
  const InitialLaw g = tent();
  EXPECT_FALSE(is_dirac(g));
  EXPECT_EQ(describe(g), "grid-density[3 nodes]");
}

}  // namespace
}  // namespace parrep
