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

#include "parrep/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "parrep/error.hpp"

namespace parrep {

EmpiricalSample::EmpiricalSample(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("empirical sample: empty");
  for (double v : values_) {
    if (std::isnan(v)) throw InvalidArgument("empirical sample: NaN value");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalSample::ecdf(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double EmpiricalSample::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double EmpiricalSample::median() const {
  const std::size_t n = values_.size();
  return n % 2 == 1 ? values_[n / 2]
                    : 0.5 * (values_[n / 2 - 1] + values_[n / 2]);
}

double EmpiricalSample::stddev() const {
  const std::size_t n = values_.size();
  if (n < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double v : values_) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(n - 1));
}

//---------------------------------------------------------------------------//
// Kolmogorov-Smirnov
//---------------------------------------------------------------------------//

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // P[K <= lambda] = sqrt(2 pi)/lambda sum_k exp(-(2k-1)^2 pi^2 / (8 lambda^2))
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      s += term;
      if (term < 1e-17 * s) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * s;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double s = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += sign * term;
    sign = -sign;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.size() < 10 || b.size() < 10) {
    throw InvalidArgument("ks_two_sample: both samples need at least 10 values");
  }
  const auto x = a.values();
  const auto y = b.values();
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 -
                             static_cast<double>(j) / n2));
  }
  KsResult r;
  r.statistic = d;
  r.n1 = x.size();
  r.n2 = y.size();
  r.p_value = kolmogorov_survival(std::sqrt(n1 * n2 / (n1 + n2)) * d);
  return r;
}

KsResult ks_vs_cdf(const EmpiricalSample& a,
                   const std::function<double(double)>& cdf) {
  if (a.size() < 10) {
    throw InvalidArgument("ks_vs_cdf: sample needs at least 10 values");
  }
  const auto x = a.values();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  KsResult r;
  r.statistic = d;
  r.n1 = x.size();
  r.p_value = kolmogorov_survival(std::sqrt(n) * d);
  return r;
}

//---------------------------------------------------------------------------//
// Intervals and fits
//---------------------------------------------------------------------------//

ConfidenceInterval binomial_ci(std::size_t successes, std::size_t trials,
                               double level, IntervalMethod method) {
  if (trials == 0) throw InvalidArgument("binomial_ci: trials must be >= 1");
  if (successes > trials) {
    throw InvalidArgument("binomial_ci: successes exceed trials");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidArgument("binomial_ci: level must be in (0, 1)");
  }
  const double z =
      boost::math::quantile(boost::math::normal(), 0.5 * (1.0 + level));
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  ConfidenceInterval ci;
  if (method == IntervalMethod::kNormal) {
    const double half = z * std::sqrt(p * (1.0 - p) / n);
    ci.lo = p - half;
    ci.hi = p + half;
  } else {
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    ci.lo = centre - half;
    ci.hi = centre + half;
  }
  ci.lo = std::clamp(ci.lo, 0.0, 1.0);
  ci.hi = std::clamp(ci.hi, 0.0, 1.0);
  return ci;
}

RateEstimate exp_rate_fit(const EmpiricalSample& a) {
  if (!(a.values().front() > 0.0)) {
    throw InvalidArgument("exp_rate_fit: values must be positive");
  }
  RateEstimate r;
  r.rate = 1.0 / a.mean();
  r.standard_error = r.rate / std::sqrt(static_cast<double>(a.size()));
  return r;
}

GapFit estimate_gap(std::span<const std::pair<double, double>> series,
                    std::optional<double> asymptote) {
  const std::size_t n = series.size();
  if (n < 8) throw InvalidArgument("estimate_gap: need at least 8 points");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(series[i].first > series[i - 1].first)) {
      throw InvalidArgument("estimate_gap: times must be increasing");
    }
  }
  GapFit fit;
  std::size_t fit_count = n;
  double floor = 0.0;
  if (asymptote) {
    fit.asymptote = *asymptote;
  } else {
    const std::size_t tail = std::max<std::size_t>(1, (n + 4) / 5);
    fit_count = n - tail;
    double s = 0.0;
    for (std::size_t i = fit_count; i < n; ++i) s += series[i].second;
    fit.asymptote = s / static_cast<double>(tail);
    // The estimated asymptote is only known to about the spread of the tail.
    for (std::size_t i = fit_count; i < n; ++i) {
      floor = std::max(floor, 100.0 * std::abs(series[i].second - fit.asymptote));
    }
  }

  double scale = 0.0;
  for (const auto& p : series) scale = std::max(scale, std::abs(p.second));
  std::vector<double> ts;
  std::vector<double> logs;
  for (std::size_t i = 0; i < fit_count; ++i) {
    const double dev = std::abs(series[i].second - fit.asymptote);
    if (dev > std::max(floor, 1e-14 * std::max(scale, 1e-300))) {
      ts.push_back(series[i].first);
      logs.push_back(std::log(dev));
    }
  }
  if (ts.size() < 3) {
    throw NumericError("estimate_gap: series shows no decay toward its asymptote");
  }
  for (std::size_t i = 1; i < logs.size(); ++i) {
    if (logs[i] > logs[i - 1]) {
      std::ostringstream os;
      os << "estimate_gap: deviation from the asymptote is not monotone at t="
         << ts[i] << " (log deviations";
      for (double v : logs) os << ' ' << v;
      os << ")";
      throw NumericError(os.str());
    }
  }
  const double k = static_cast<double>(ts.size());
  const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / k;
  const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (logs[i] - ml);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) {
    throw NumericError("estimate_gap: fitted slope is not decaying");
  }
  fit.gap = -slope;
  fit.log_amplitude = ml - slope * mt;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    fit.residuals.push_back(logs[i] - (fit.log_amplitude + slope * ts[i]));
  }
  return fit;
}

}  // namespace parrep
