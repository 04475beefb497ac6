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
#include <numbers>
#include <utility>
#include <vector>

#include "parrep/error.hpp"
#include "parrep/spectral.hpp"
#include "parrep/stats.hpp"

namespace parrep {
namespace {

// Reference eigenvalues from an independent dense solve of the same
// divergence-form discretization with m = 4000 intervals.
TEST(SpectrumTest, HarmonicReference) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 4000, 5);
  EXPECT_NEAR(s.eigenvalue(0), 0.97197165, 5e-8);
  EXPECT_NEAR(s.eigenvalue(1), 8.98261546, 5e-8);
  EXPECT_LT(s.max_relative_residual(), 1e-7);
}

TEST(SpectrumTest, CosineReference) {
  const Spectrum s = eigensolve(Potential::cosine(), WellSpec{}, 4000, 5);
  EXPECT_NEAR(s.eigenvalue(0), 0.20227967, 5e-8);
  EXPECT_NEAR(s.eigenvalue(1), 16.25884347, 5e-7);
}

TEST(SpectrumTest, FlatBoxMatchesSquares) {
  const WellSpec box{0, 0.0, std::numbers::pi, std::numbers::pi / 2};
  const Spectrum s = eigensolve(Potential::flat(), box, 4000, 5);
  const double ref[] = {0.99999995, 3.99999918, 8.99999584, 15.99998684, 24.99996787};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(s.eigenvalue(k), ref[k], 2e-7) << k;
}

// Second-order convergence: successive differences shrink by about 4.
TEST(SpectrumTest, GridConvergenceIsSecondOrder) {
  for (const Potential& p : {Potential::harmonic(), Potential::cosine()}) {
    double l[3];
    std::size_t m = 1000;
    for (double& v : l) {
      v = eigensolve(p, WellSpec{}, m, 2).eigenvalue(0);
      m *= 2;
    }
    const double ratio = (l[0] - l[1]) / (l[1] - l[2]);
    EXPECT_GT(ratio, 3.5) << p.name();
    EXPECT_LT(ratio, 4.5) << p.name();
  }
}

TEST(SpectrumTest, EigenfunctionsOrthonormal) {
  const Spectrum s = eigensolve(Potential::cosine(), WellSpec{}, 2000, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      EXPECT_NEAR(s.inner_product(s.eigenfunction(i), s.eigenfunction(j)),
                  i == j ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(SpectrumTest, SignConventionsAndBoundaryValues) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 1000, 4);
  const auto u1 = s.eigenfunction(0);
  EXPECT_EQ(u1.front(), 0.0);
  EXPECT_EQ(u1.back(), 0.0);
  for (std::size_t i = 1; i + 1 < u1.size(); ++i) ASSERT_GT(u1[i], 0.0);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_GT(s.eigenfunction(k)[1], 0.0);
  EXPECT_EQ(s.eigenfunction_at(0, 1.5), 0.0);
  EXPECT_NEAR(s.eigenfunction_at(0, 0.0), u1[500], 1e-12);
}

TEST(SpectrumTest, PartitionFunction) {
  // int_{-1}^{1} e^{-2 x^2} dx = sqrt(pi/2) erf(sqrt 2).
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 4000, 2);
  EXPECT_NEAR(s.partition_function(),
              std::sqrt(std::numbers::pi / 2) * std::erf(std::sqrt(2.0)), 1e-6);
}

TEST(SpectrumTest, RejectsBadArguments) {
  EXPECT_THROW(eigensolve(Potential::harmonic(), WellSpec{}, 100, 2), InvalidArgument);
  EXPECT_THROW(eigensolve(Potential::harmonic(), WellSpec{}, 1000, 1), InvalidArgument);
  EXPECT_THROW(eigensolve(Potential::harmonic(), WellSpec{0, 1.0, -1.0, 0.0}, 1000, 2),
               InvalidArgument);
}

TEST(SpectrumTest, FaultHookScalesOneEigenvalue) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 1000, 3);
  const Spectrum f = s.with_scaled_eigenvalue(1, 1.5);
  EXPECT_DOUBLE_EQ(f.eigenvalue(1), 1.5 * s.eigenvalue(1));
  EXPECT_DOUBLE_EQ(f.eigenvalue(0), s.eigenvalue(0));
  EXPECT_GT(f.max_relative_residual(), 0.1);
}

TEST(QsdTest, NormalizedSymmetricAndPositive) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 2);
  const QsdDensity q = qsd(s);
  EXPECT_NEAR(q.cdf(0.0), 0.5, 1e-12);
  EXPECT_NEAR(q.mean(), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(q.cdf(1.0), 1.0);
  for (std::size_t i = 1; i + 1 < q.density().size(); ++i) ASSERT_GT(q.density()[i], 0.0);
}

TEST(ExitLawTest, SymmetricWellSplitsEvenly) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, kDefaultGridIntervals, 2);
  const ExitPointLaw law = exit_point_law(s);
  EXPECT_NEAR(law.mass_lo, 0.5, 1e-6);
  EXPECT_NEAR(law.mass_hi, 0.5, 1e-6);
  EXPECT_LT(std::abs(law.sum_error), 1e-6);
}

TEST(ExitLawTest, AsymmetricWellReference) {
  const WellSpec well{0, -1.0, 1.5, 0.0};
  const Spectrum s = eigensolve(Potential::harmonic(), well, kDefaultGridIntervals, 2);
  const ExitPointLaw law = exit_point_law(s);
  EXPECT_NEAR(law.mass_lo, 0.87296, 2e-5);
  EXPECT_NEAR(law.mass_hi, 0.12704, 2e-5);
}

TEST(ExitLawTest, CoarseGridIsRejected) {
  const Spectrum s = eigensolve(Potential::cosine(), WellSpec{}, 1000, 2);
  EXPECT_THROW(exit_point_law(s), NumericError);
}

TEST(SurvivalTest, QsdStartIsExactlyExponential) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 20);
  const QsdDensity q = qsd(s);
  for (double t : {0.0, 0.1, 0.5, 2.0}) {
    const SurvivalValue v = survival_oracle(s, q, t);
    EXPECT_NEAR(v.probability, std::exp(-s.eigenvalue(0) * t), 1e-9) << t;
    EXPECT_TRUE(v.reliable);
  }
}

TEST(SurvivalTest, DiracStartIsMonotoneAndFlagsShortTimes) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 20);
  const InitialLaw start = DiracLaw{0.1};
  double prev = 1.0;
  for (double t = 0.01; t < 3.0; t += 0.05) {
    const SurvivalValue v = survival_oracle(s, start, t);
    EXPECT_LE(v.probability, prev + 1e-12);
    prev = v.probability;
  }
  EXPECT_FALSE(survival_oracle(s, start, 0.1 * reliability_cutoff(s)).reliable);
  EXPECT_TRUE(survival_oracle(s, start, 1.0).reliable);
  // At long times only the first mode is left.
  const auto c = start_coefficients(s, start);
  const double t = 4.0;
  EXPECT_NEAR(survival_oracle(s, start, t).probability,
              c[0] * s.mean_of_mode(0) * std::exp(-s.eigenvalue(0) * t), 1e-12);
  EXPECT_THROW(survival_oracle(s, DiracLaw{2.0}, 1.0), PreconditionError);
}

TEST(ConditionedTest, ConvergesToQsd) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 20);
  const QsdDensity q = qsd(s);
  const auto rho = conditioned_density(s, DiracLaw{0.1}, 3.0);
  double err = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    err = std::max(err, std::abs(rho[i] - q.density()[i]));
  }
  EXPECT_LT(err, 1e-8);
}

// The conditioned mean of x from an off-centre start relaxes at the rate
// lambda_2 - lambda_1.
TEST(ConditionedTest, GapFromConditionedMean) {
  const Spectrum s = eigensolve(Potential::harmonic(), WellSpec{}, 2000, 20);
  std::vector<double> x(s.grid().begin(), s.grid().end());
  std::vector<std::pair<double, double>> series;
  for (double t = 0.2; t <= 1.2; t += 0.05) {
    series.emplace_back(t, conditioned_mean(s, DiracLaw{0.1}, x, t));
  }
  const double gap = s.eigenvalue(1) - s.eigenvalue(0);
  EXPECT_NEAR(estimate_gap(series, 0.0).gap, gap, 0.01 * gap);
}

TEST(CommittorTest, Values) {
  const Potential h = Potential::harmonic();
  EXPECT_NEAR(committor(h, WellSpec{}, 0.0), 0.5, 1e-12);
  EXPECT_NEAR(committor(h, WellSpec{}, -1.0), 0.0, 1e-14);
  EXPECT_NEAR(committor(h, WellSpec{}, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(committor(h, WellSpec{}, 0.3) + committor(h, WellSpec{}, -0.3), 1.0, 1e-12);
  const WellSpec box{0, 0.0, 2.0, 1.0};
  EXPECT_NEAR(committor(Potential::flat(), box, 0.5), 0.25, 1e-13);
  double prev = 0.0;
  for (double x = -0.95; x < 1.0; x += 0.1) {
    const double q = committor(Potential::cosine(), WellSpec{}, x);
    EXPECT_GT(q, prev);
    prev = q;
  }
  EXPECT_THROW(committor(h, WellSpec{}, 1.5), PreconditionError);
}

TEST(WeylTest, SpreadForPresets) {
  for (const Potential& p : {Potential::harmonic(), Potential::cosine()}) {
    const WeylTable w = weyl_check(eigensolve(p, WellSpec{}, 4000, 20));
    EXPECT_TRUE(w.passed) << p.name();
    EXPECT_LT(w.spread, 1.2) << p.name();
    EXPECT_EQ(w.ratios.size(), 20u);
  }
  const WellSpec box{0, 0.0, std::numbers::pi, std::numbers::pi / 2};
  const WeylTable flat = weyl_check(eigensolve(Potential::flat(), box, 4000, 20));
  for (double r : flat.ratios) EXPECT_NEAR(r, 1.0, 1e-4);
  EXPECT_THROW(weyl_check(eigensolve(Potential::flat(), box, 1000, 5)), InvalidArgument);
}

}  // namespace
}  // namespace parrep
