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
#include <utility>
#include <vector>

#include "parrep/error.hpp"
#include "parrep/rng.hpp"
#include "parrep/stats.hpp"

namespace parrep {
namespace {

std::vector<double> range(double first, int count, double step = 1.0) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(first + i * step);
  return v;
}

std::vector<double> uniforms(std::uint64_t stream, int n, double shift = 0.0) {
  NormalStream s(2024, stream);
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(s.uniform() + shift);
  return v;
}

TEST(EmpiricalSampleTest, SortsAndSummarizes) {
  const EmpiricalSample s({3.0, 1.0, 4.0, 1.0, 5.0});
  EXPECT_EQ(s.size(), 5u);
  EXPECT_EQ(s.values().front(), 1.0);
  EXPECT_EQ(s.values().back(), 5.0);
  EXPECT_DOUBLE_EQ(s.mean(), 2.8);
  EXPECT_DOUBLE_EQ(s.median(), 3.0);
  EXPECT_NEAR(s.stddev(), std::sqrt(3.2), 1e-15);
  EXPECT_DOUBLE_EQ(s.ecdf(0.5), 0.0);
  EXPECT_DOUBLE_EQ(s.ecdf(1.0), 0.4);
  EXPECT_DOUBLE_EQ(s.ecdf(4.5), 0.8);
  EXPECT_DOUBLE_EQ(s.ecdf(9.0), 1.0);
  EXPECT_DOUBLE_EQ(EmpiricalSample({1.0, 2.0, 3.0, 4.0}).median(), 2.5);
  EXPECT_EQ(EmpiricalSample({7.0}).stddev(), 0.0);
  EXPECT_THROW(EmpiricalSample({}), InvalidArgument);
  EXPECT_THROW(EmpiricalSample({NAN}), InvalidArgument);
}

TEST(KolmogorovTest, LimitingDistributionValues) {
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.963945, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.0), 0.269999, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_DOUBLE_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
}

TEST(KolmogorovTest, SeriesAreContinuousAtSwitch) {
  EXPECT_NEAR(kolmogorov_survival(1.18 - 1e-12), kolmogorov_survival(1.18 + 1e-12), 1e-10);
}

TEST(KsTwoSampleTest, IdenticalSamples) {
  const EmpiricalSample a(range(0.0, 20));
  const KsResult r = ks_two_sample(a, a);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.n1, 20u);
  EXPECT_EQ(r.n2, 20u);
}

TEST(KsTwoSampleTest, DisjointSamples) {
  const KsResult r =
      ks_two_sample(EmpiricalSample(range(0.0, 10)), EmpiricalSample(range(100.0, 10)));
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_LT(r.p_value, 1e-3);
}

TEST(KsTwoSampleTest, TiesAcrossSamples) {
  // a = 0..9, b = 5..14: ECDFs differ by exactly 0.5 on [4, 5).
  const KsResult r =
      ks_two_sample(EmpiricalSample(range(0.0, 10)), EmpiricalSample(range(5.0, 10)));
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  // Interleaved with ties: a = b gives zero even though every value ties.
  std::vector<double> dup = range(0.0, 10);
  dup.insert(dup.end(), dup.begin(), dup.end());
  EXPECT_EQ(ks_two_sample(EmpiricalSample(dup), EmpiricalSample(range(0.0, 10))).statistic,
            0.0);
}

TEST(KsTwoSampleTest, SymmetricInArguments) {
  const EmpiricalSample a(uniforms(1, 300));
  const EmpiricalSample b(uniforms(2, 500, 0.05));
  const KsResult ab = ks_two_sample(a, b);
  const KsResult ba = ks_two_sample(b, a);
  EXPECT_DOUBLE_EQ(ab.statistic, ba.statistic);
  EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
}

TEST(KsTwoSampleTest, DetectsShiftAndAcceptsSameLaw) {
  const EmpiricalSample a(uniforms(1, 2000));
  EXPECT_GT(ks_two_sample(a, EmpiricalSample(uniforms(2, 2000))).p_value, 0.01);
  EXPECT_LT(ks_two_sample(a, EmpiricalSample(uniforms(3, 2000, 0.1))).p_value, 1e-6);
}

TEST(KsTwoSampleTest, RequiresTenValues) {
  EXPECT_THROW(ks_two_sample(EmpiricalSample(range(0.0, 9)), EmpiricalSample(range(0.0, 20))),
               InvalidArgument);
}

TEST(KsVsCdfTest, UniformSample) {
  const auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const KsResult ok = ks_vs_cdf(EmpiricalSample(uniforms(4, 5000)), cdf);
  EXPECT_GT(ok.p_value, 0.01);
  EXPECT_EQ(ok.n2, 0u);
  const KsResult off = ks_vs_cdf(EmpiricalSample(uniforms(5, 5000, 0.05)), cdf);
  EXPECT_NEAR(off.statistic, 0.05, 0.02);
  EXPECT_LT(off.p_value, 1e-6);
}

TEST(KsVsCdfTest, ExactStatisticOnSmallSample) {
  // Cell midpoints of [0, 1] sit half a step from every ECDF jump.
  const EmpiricalSample s(range(0.05, 10, 0.1));
  const KsResult r = ks_vs_cdf(s, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_NEAR(r.statistic, 0.05, 1e-12);
}

TEST(BinomialCiTest, NormalApproximation) {
  const auto ci = binomial_ci(50, 100);
  EXPECT_NEAR(ci.lo, 0.5 - 1.959963984540054 * 0.05, 1e-12);
  EXPECT_NEAR(ci.hi, 0.5 + 1.959963984540054 * 0.05, 1e-12);
  const auto zero = binomial_ci(0, 10);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_EQ(zero.hi, 0.0);
  const auto wide = binomial_ci(1, 3);
  EXPECT_GE(wide.lo, 0.0);
  EXPECT_LE(wide.hi, 1.0);
}

TEST(BinomialCiTest, Wilson) {
  const auto ci = binomial_ci(50, 100, 0.95, IntervalMethod::kWilson);
  EXPECT_NEAR(ci.lo, 0.40383153, 1e-8);
  EXPECT_NEAR(ci.hi, 0.59616847, 1e-8);
  const auto zero = binomial_ci(0, 10, 0.95, IntervalMethod::kWilson);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 0.277533, 1e-6);
}

TEST(BinomialCiTest, RejectsBadInput) {
  EXPECT_THROW(binomial_ci(1, 0), InvalidArgument);
  EXPECT_THROW(binomial_ci(5, 4), InvalidArgument);
  EXPECT_THROW(binomial_ci(1, 4, 1.0), InvalidArgument);
}

// Coverage of the 95% interval over many simulated experiments.
TEST(BinomialCiTest, CoverageNearNominal) {
  NormalStream s(8, 8);
  const double p = 0.3;
  const int trials = 400;
  const int experiments = 2000;
  int covered = 0;
  for (int e = 0; e < experiments; ++e) {
    std::size_t k = 0;
    for (int i = 0; i < trials; ++i) k += s.uniform() < p;
    const auto ci = binomial_ci(k, trials);
    covered += ci.lo <= p && p <= ci.hi;
  }
  EXPECT_NEAR(static_cast<double>(covered) / experiments, 0.95, 0.02);
}

TEST(ExpRateFitTest, MaximumLikelihood) {
  const RateEstimate one = exp_rate_fit(EmpiricalSample({2.0}));
  EXPECT_DOUBLE_EQ(one.rate, 0.5);
  EXPECT_DOUBLE_EQ(one.standard_error, 0.5);
  const RateEstimate three = exp_rate_fit(EmpiricalSample({1.0, 2.0, 3.0}));
  EXPECT_DOUBLE_EQ(three.rate, 0.5);
  EXPECT_DOUBLE_EQ(three.standard_error, 0.5 / std::sqrt(3.0));
  EXPECT_THROW(exp_rate_fit(EmpiricalSample({1.0, 0.0})), InvalidArgument);
}

TEST(ExpRateFitTest, RecoversRateFromSamples) {
  NormalStream s(6, 6);
  std::vector<double> t;
  for (int i = 0; i < 20000; ++i) t.push_back(-std::log(s.uniform()) / 3.0);
  const RateEstimate r = exp_rate_fit(EmpiricalSample(t));
  EXPECT_NEAR(r.rate, 3.0, 4.0 * r.standard_error);
}

std::vector<std::pair<double, double>> decay(double a, double c, double g, int n,
                                             double t_end) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < n; ++i) {
    const double t = t_end * i / (n - 1);
    s.emplace_back(t, a + c * std::exp(-g * t));
  }
  return s;
}

TEST(EstimateGapTest, ExactExponentialWithKnownAsymptote) {
  const auto s = decay(1.0, 3.0, 2.0, 20, 3.0);
  const GapFit fit = estimate_gap(s, 1.0);
  EXPECT_NEAR(fit.gap, 2.0, 1e-10);
  EXPECT_NEAR(fit.log_amplitude, std::log(3.0), 1e-10);
  for (double r : fit.residuals) EXPECT_NEAR(r, 0.0, 1e-10);
}

TEST(EstimateGapTest, EstimatedAsymptote) {
  const auto s = decay(-0.5, 2.0, 4.0, 50, 8.0);
  const GapFit fit = estimate_gap(s);
  EXPECT_NEAR(fit.asymptote, -0.5, 1e-9);
  EXPECT_NEAR(fit.gap, 4.0, 1e-3);
}

TEST(EstimateGapTest, DecreasingDeviationFromBelow) {
  const auto s = decay(1.0, -0.3, 1.5, 12, 4.0);
  EXPECT_NEAR(estimate_gap(s, 1.0).gap, 1.5, 1e-10);
}

TEST(EstimateGapTest, Failures) {
  EXPECT_THROW(estimate_gap(decay(0.0, 1.0, 1.0, 5, 1.0)), InvalidArgument);
  auto flat = decay(2.0, 0.0, 1.0, 10, 1.0);
  EXPECT_THROW(estimate_gap(flat), NumericError);
  auto bumpy = decay(0.0, 1.0, 1.0, 10, 1.0);
  bumpy[4].second *= 3.0;
  EXPECT_THROW(estimate_gap(bumpy, 0.0), NumericError);
  auto growing = decay(0.0, 1.0, -1.0, 10, 1.0);
  EXPECT_THROW(estimate_gap(growing, 0.0), NumericError);
  auto unordered = decay(0.0, 1.0, 1.0, 10, 1.0);
  std::swap(unordered[2], unordered[3]);
  EXPECT_THROW(estimate_gap(unordered, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace parrep
