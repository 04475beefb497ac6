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

#ifndef PARREP_STATS_HPP_
#define PARREP_STATS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace parrep {

// Sorted sample with its empirical CDF.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  // Right-continuous ECDF: fraction of values <= x.
  double ecdf(double x) const;
  double mean() const;
  double median() const;
  // Sample standard deviation (n - 1 denominator); zero for n == 1.
  double stddev() const;

 private:
  std::vector<double> values_;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // zero for the one-sample test
};

// P[K > lambda] for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

// Two-sample Kolmogorov-Smirnov test; both sizes must be >= 10.
KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

// One-sample test against a continuous CDF; size must be >= 10.
KsResult ks_vs_cdf(const EmpiricalSample& a,
                   const std::function<double(double)>& cdf);

enum class IntervalMethod { kNormal, kWilson };

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
};

ConfidenceInterval binomial_ci(std::size_t successes, std::size_t trials,
                               double level = 0.95,
                               IntervalMethod method = IntervalMethod::kNormal);

struct RateEstimate {
  double rate = 0.0;
  double standard_error = 0.0;
};

// Exponential-rate MLE 1/mean with standard error rate/sqrt(n); needs n >= 1
// positive values (the >= 10 guideline is checked by callers that test fits).
RateEstimate exp_rate_fit(const EmpiricalSample& a);

struct GapFit {
  double gap = 0.0;
  double asymptote = 0.0;
  double log_amplitude = 0.0;
  std::vector<double> residuals;  // log-space residuals of the fitted points
};

// Fits |y(t) - A| ~ C e^{-g t} by log-linear least squares and returns g.
// A is taken from `asymptote` when given, otherwise as the mean of the final
// 20% of the series, which is then excluded from the fit.
GapFit estimate_gap(std::span<const std::pair<double, double>> series,
                    std::optional<double> asymptote = std::nullopt);

}  // namespace parrep

#endif  // PARREP_STATS_HPP_
