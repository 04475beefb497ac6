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

#include "parrep/error.hpp"
#include "parrep/sde.hpp"

namespace parrep {
namespace {

// Replays a fixed list of normals, then zeros.
struct ScriptedNoise {
  std::vector<double> values;
  std::size_t next = 0;
  double normal() { return next < values.size() ? values[next++] : 0.0; }
};

TEST(EmStepTest, DriftOnlyWithZeroNoise) {
  const Potential p = Potential::harmonic();
  const TrajectoryState s = em_step({0.5, 3}, p, 0.01, 0.0);
  EXPECT_DOUBLE_EQ(s.x, 0.5 - 2.0 * 0.01);
  EXPECT_EQ(s.steps, 4);
  EXPECT_DOUBLE_EQ(s.time(0.01), 0.04);
}

TEST(EmStepTest, NoiseScalesWithTemperature) {
  const Potential p = Potential::flat(4.0);
  const TrajectoryState s = em_step({0.0, 0}, p, 0.02, 1.0);
  EXPECT_DOUBLE_EQ(s.x, std::sqrt(2.0 * 0.02 / 4.0));
}

TEST(StepsForTest, RoundsToNearestStep) {
  EXPECT_EQ(steps_for(0.2, 1e-4), 2000);
  EXPECT_EQ(steps_for(0.05, 1e-3), 50);
  EXPECT_EQ(steps_for(0.0, 1e-3), 0);
  EXPECT_THROW(steps_for(-1.0, 1e-3), InvalidArgument);
  EXPECT_THROW(steps_for(1.0, 0.0), InvalidArgument);
}

TEST(RunUntilExitTest, GradientDescentNeverLeaves) {
  const Potential p = Potential::harmonic();
  ZeroNoise z;
  const ExitEvent ev = run_until_exit(0.5, WellSpec{}, p, 0.01, z, 100);
  EXPECT_TRUE(ev.survived());
  EXPECT_EQ(ev.steps, 100);
  EXPECT_NEAR(ev.final_position, 0.5 * std::pow(1.0 - 0.04, 100), 1e-14);
}

TEST(RunUntilExitTest, DetectsFirstGridExit) {
  const Potential p = Potential::flat();
  const double dt = 0.5;  // sigma = 1
  ScriptedNoise noise{{0.6, 0.3, 0.2, -5.0}};
  const ExitEvent ev = run_until_exit(0.0, WellSpec{}, p, dt, noise, -1);
  ASSERT_FALSE(ev.survived());
  EXPECT_EQ(ev.steps, 3);
  EXPECT_DOUBLE_EQ(*ev.exit_point, 1.1);
  EXPECT_EQ(*ev.side, BoundarySide::kHi);
  EXPECT_DOUBLE_EQ(ev.exit_time(), 1.5);
}

TEST(RunUntilExitTest, LandingOnBoundaryIsAnExit) {
  const Potential p = Potential::flat();
  ScriptedNoise noise{{-1.0}};
  const ExitEvent ev = run_until_exit(0.0, WellSpec{}, p, 0.5, noise, 10);
  ASSERT_FALSE(ev.survived());
  EXPECT_EQ(*ev.side, BoundarySide::kLo);
  EXPECT_EQ(ev.steps, 1);
}

TEST(RunUntilExitTest, ExitOnFinalStepCounts) {
  const Potential p = Potential::flat();
  ScriptedNoise noise{{0.5, 0.6}};
  const ExitEvent ev = run_until_exit(0.0, WellSpec{}, p, 0.5, noise, 2);
  EXPECT_FALSE(ev.survived());
  EXPECT_EQ(ev.steps, 2);
  ScriptedNoise again{{0.5, 0.6}};
  const ExitEvent cut = run_until_exit(0.0, WellSpec{}, p, 0.5, again, 1);
  EXPECT_TRUE(cut.survived());
  EXPECT_DOUBLE_EQ(cut.final_position, 0.5);
}

TEST(RunUntilExitTest, RejectsStartOutsideWell) {
  const Potential p = Potential::flat();
  ZeroNoise z;
  EXPECT_THROW(run_until_exit(1.0, WellSpec{}, p, 0.1, z, 5), PreconditionError);
  EXPECT_THROW(run_until_exit(-2.0, WellSpec{}, p, 0.1, z, 5), PreconditionError);
}

TEST(RunUntilExitTest, ConfigOverloadReplays) {
  const Potential p = Potential::harmonic();
  const IntegratorConfig cfg{1e-3, 11, 4};
  const ExitEvent a = run_until_exit(0.1, WellSpec{}, p, cfg);
  const ExitEvent b = run_until_exit(0.1, WellSpec{}, p, cfg);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.exit_point, b.exit_point);
  const ExitEvent h = run_until_exit(0.1, WellSpec{}, p, cfg, 0.001);
  EXPECT_EQ(h.steps, 1);
  EXPECT_THROW(run_until_exit(0.1, WellSpec{}, p, IntegratorConfig{0.0, 1, 1}),
               InvalidArgument);
}

// Brownian motion with generator d^2/dx^2 started at 0 leaves (-1, 1) after
// mean time 1/2; monitoring on the dt grid widens the interval by about
// 0.5826 sqrt(2 dt) on each side.
TEST(RunUntilExitTest, BrownianMeanExitTime) {
  const Potential p = Potential::flat();
  const double dt = 1e-4;
  const int n = 2000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    NormalStream s(77, static_cast<std::uint64_t>(i));
    sum += run_until_exit(0.0, WellSpec{}, p, dt, s, -1).exit_time();
  }
  const double widened = 1.0 + 0.5826 * std::sqrt(2.0 * dt);
  const double expected = widened * widened / 2.0;
  const double se = std::sqrt(1.0 / 6.0 / n);
  EXPECT_NEAR(sum / n, expected, 4.0 * se);
}

TEST(ToStringTest, BoundarySide) {
  EXPECT_EQ(to_string(BoundarySide::kLo), "lo");
  EXPECT_EQ(to_string(BoundarySide::kHi), "hi");
}

}  // namespace
}  // namespace parrep
