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

#include "parrep/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parrep/error.hpp"

namespace parrep {

GridDensity::GridDensity(std::vector<double> grid, std::vector<double> density)
    : grid_(std::move(grid)), density_(std::move(density)) {
  if (grid_.size() < 2 || grid_.size() != density_.size()) {
    throw InvalidArgument("grid density: need >= 2 nodes and matching sizes");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) {
      throw InvalidArgument("grid density: grid must be strictly increasing");
    }
  }
  const double peak = *std::max_element(density_.begin(), density_.end());
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw InvalidArgument("grid density: density has no positive mass");
  }
  for (double& v : density_) {
    if (!std::isfinite(v)) throw InvalidArgument("grid density: non-finite");
    if (v < 0.0) {
      if (v < -1e-10 * peak) {
        throw InvalidArgument("grid density: negative density");
      }
      v = 0.0;
    }
  }
  cdf_.assign(grid_.size(), 0.0);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    cdf_[i] = cdf_[i - 1] +
              0.5 * (density_[i - 1] + density_[i]) * (grid_[i] - grid_[i - 1]);
  }
  const double total = cdf_.back();
  for (auto& v : density_) v /= total;
  for (auto& v : cdf_) v /= total;
  cdf_.back() = 1.0;
}

double GridDensity::cdf(double x) const {
  if (x <= grid_.front()) return 0.0;
  if (x >= grid_.back()) return 1.0;
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const auto i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double h = grid_[i + 1] - grid_[i];
  const double s = x - grid_[i];
  const double f0 = density_[i];
  const double f1 = density_[i + 1];
  return cdf_[i] + f0 * s + 0.5 * (f1 - f0) * s * s / h;
}

double GridDensity::mean() const {
  // Exact first moment of the piecewise-linear density.
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double a = grid_[i];
    const double b = grid_[i + 1];
    const double h = b - a;
    m += h / 6.0 * (density_[i] * (2.0 * a + b) + density_[i + 1] * (a + 2.0 * b));
  }
  return m;
}

double GridDensity::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidArgument("grid density: quantile level must be in (0, 1)");
  }
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  auto i = static_cast<std::size_t>(it - cdf_.begin());
  i = std::clamp<std::size_t>(i, 1, grid_.size() - 1) - 1;
  const double h = grid_[i + 1] - grid_[i];
  const double f0 = density_[i];
  const double f1 = density_[i + 1];
  const double r = u - cdf_[i];
  // Solve f0 s + (f1 - f0) s^2 / (2h) = r for s in [0, h].
  const double a = 0.5 * (f1 - f0) / h;
  double s = 0.0;
  if (std::abs(a) * h < 1e-12 * std::max(f0, f1)) {
    s = f0 > 0.0 ? r / f0 : 0.5 * h;
  } else {
    const double disc = std::max(0.0, f0 * f0 + 4.0 * a * r);
    s = 2.0 * r / (f0 + std::sqrt(disc));
  }
  s = std::clamp(s, 0.0, h);
  double x = grid_[i] + s;
  if (x <= grid_.front()) x = std::nextafter(grid_.front(), grid_.back());
  if (x >= grid_.back()) x = std::nextafter(grid_.back(), grid_.front());
  return x;
}

std::string describe(const InitialLaw& law) {
  std::ostringstream os;
  if (const auto* d = std::get_if<DiracLaw>(&law)) {
    os.precision(17);
    os << "dirac:" << d->x;
  } else {
    const auto& g = std::get<GridDensity>(law);
    os << "grid-density[" << g.grid().size() << " nodes]";
  }
  return os.str();
}

}  // namespace parrep
