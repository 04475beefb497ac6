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
#include <memory>
#include <numbers>

#include "parrep/error.hpp"
#include "parrep/model.hpp"

namespace parrep {
namespace {

TEST(PotentialTest, HarmonicValueAndDerivative) {
  const Potential p = Potential::harmonic();
  EXPECT_DOUBLE_EQ(p.value(0.5), 0.5);
  EXPECT_DOUBLE_EQ(p.derivative(0.5), 2.0);
  EXPECT_DOUBLE_EQ(p.force(-0.25), 1.0);
  EXPECT_DOUBLE_EQ(force(p, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(p.beta(), 1.0);
}

TEST(PotentialTest, CosineValueAndDerivative) {
  const Potential p = Potential::cosine();
  EXPECT_DOUBLE_EQ(p.value(0.0), -2.0);
  EXPECT_NEAR(p.value(1.0), 2.0, 1e-15);
  EXPECT_NEAR(p.derivative(0.5), 2.0 * std::numbers::pi, 1e-14);
  // Period 2.
  for (double x : {-3.3, -0.7, 0.1, 1.9}) {
    EXPECT_NEAR(p.value(x), p.value(x + 2.0), 1e-12);
    EXPECT_NEAR(p.derivative(x), p.derivative(x + 2.0), 1e-12);
  }
}

TEST(PotentialTest, FlatIsZero) {
  const Potential p = Potential::flat(2.0);
  EXPECT_EQ(p.value(3.0), 0.0);
  EXPECT_EQ(p.derivative(-1.0), 0.0);
  EXPECT_EQ(p.beta(), 2.0);
}

TEST(PotentialTest, DerivativeMatchesFiniteDifference) {
  const Potential ps[] = {Potential::harmonic(3.0, 2.0), Potential::cosine(1.5, 2.0)};
  for (const auto& p : ps) {
    for (double x = -0.9; x < 0.9; x += 0.13) {
      const double h = 1e-6;
      const double fd = (p.value(x + h) - p.value(x - h)) / (2 * h);
      EXPECT_NEAR(p.derivative(x), fd, 1e-6) << p.name() << " at " << x;
    }
  }
}

TEST(CubicTableTest, InterpolatesKnotsAndLines) {
  std::vector<double> line;
  for (int i = 0; i <= 10; ++i) line.push_back(3.0 * (i / 10.0) - 1.0);
  const CubicTable t(0.0, 1.0, line);
  for (double x = 0.0; x <= 1.0; x += 0.037) {
    EXPECT_NEAR(t.value(x), 3.0 * x - 1.0, 1e-13);
    EXPECT_NEAR(t.derivative(x), 3.0, 1e-12);
  }
}

TEST(CubicTableTest, ApproximatesSmoothFunction) {
  std::vector<double> v;
  const int n = 400;
  for (int i = 0; i <= n; ++i) v.push_back(std::sin(-1.0 + 2.0 * i / n));
  const auto t = std::make_shared<const CubicTable>(-1.0, 1.0, v);
  const Potential p = Potential::table(t);
  for (double x = -0.8; x < 0.8; x += 0.011) {
    EXPECT_NEAR(p.value(x), std::sin(x), 1e-9);
    EXPECT_NEAR(p.derivative(x), std::cos(x), 1e-6);
  }
}

TEST(CubicTableTest, RejectsOutOfRangeAndBadInput) {
  const CubicTable t(0.0, 1.0, {0.0, 1.0, 4.0});
  EXPECT_THROW(t.value(1.5), InvalidArgument);
  EXPECT_THROW(t.derivative(-0.1), InvalidArgument);
  EXPECT_THROW(CubicTable(0.0, 1.0, {1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(CubicTable(1.0, 0.0, {1.0, 2.0, 3.0}), InvalidArgument);
  EXPECT_THROW(Potential::table(nullptr), InvalidArgument);
}

TEST(WellSpecTest, Validation) {
  EXPECT_NO_THROW((WellSpec{0, -1.0, 1.0, 0.0}.validate()));
  EXPECT_THROW((WellSpec{0, 1.0, -1.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((WellSpec{0, -1.0, 1.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((WellSpec{0, -INFINITY, 1.0, 0.0}.validate()), InvalidArgument);
}

TEST(WellSpecTest, OpenMembership) {
  const WellSpec w;
  EXPECT_TRUE(w.contains(0.999));
  EXPECT_FALSE(w.contains(1.0));
  EXPECT_FALSE(w.contains(-1.0));
  EXPECT_DOUBLE_EQ(w.width(), 2.0);
}

TEST(WellMapTest, LatticeSelectsNearestEvenMinimum) {
  const WellMap map = WellMap::periodic_lattice();
  EXPECT_EQ(map.select(0.0), 0);
  EXPECT_EQ(map.select(0.99), 0);
  EXPECT_EQ(map.select(2.5), 1);
  EXPECT_EQ(map.select(-3.5), -2);
  EXPECT_EQ(map.select(9.2), 5);
  EXPECT_FALSE(map.select(1.0).has_value());
  EXPECT_FALSE(select_well(map, -3.0).has_value());
  const WellSpec w = map.well(3);
  EXPECT_DOUBLE_EQ(w.lo, 5.0);
  EXPECT_DOUBLE_EQ(w.hi, 7.0);
  EXPECT_DOUBLE_EQ(w.minimum, 6.0);
  EXPECT_EQ(w.label, 3);
}

TEST(WellMapTest, LatticeLabelsAreConsistentWithWells) {
  const WellMap map = WellMap::periodic_lattice();
  for (double x = -11.0; x < 11.0; x += 0.0137) {
    const auto label = map.select(x);
    if (!label) continue;
    EXPECT_TRUE(map.well(*label).contains(x)) << x;
  }
}

TEST(WellMapTest, ExplicitList) {
  const WellMap map = WellMap::list({{1, 1.0, 3.0, 2.0}, {0, -1.0, 1.0, 0.0}});
  EXPECT_EQ(map.select(0.5), 0);
  EXPECT_EQ(map.select(1.5), 1);
  EXPECT_FALSE(map.select(3.5).has_value());
  EXPECT_THROW(map.well(7), InvalidArgument);
  EXPECT_THROW(WellMap::list({{0, -1.0, 1.0, 0.0}, {1, 0.5, 3.0, 2.0}}), InvalidArgument);
  EXPECT_THROW(WellMap::list({{0, -1.0, 1.0, 0.0}, {0, 1.0, 3.0, 2.0}}), InvalidArgument);
  EXPECT_THROW(WellMap::list({}), InvalidArgument);
}

}  // namespace
}  // namespace parrep
