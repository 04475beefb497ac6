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

#ifndef PARREP_DENSITY_HPP_
#define PARREP_DENSITY_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace parrep {

//---------------------------------------------------------------------------//
/*!
 * Piecewise-linear probability density on an increasing grid.
 *
 * The density is renormalized at construction so its trapezoid integral is
 * one; the CDF is the exact integral of the piecewise-linear interpolant.
 * Negative values within 1e-10 of the peak are treated as zero, larger
 * negative values are rejected.
 */
class GridDensity {
 public:
  GridDensity(std::vector<double> grid, std::vector<double> density);

  std::span<const double> grid() const { return grid_; }
  std::span<const double> density() const { return density_; }
  // CDF at the grid nodes.
  std::span<const double> cdf_nodes() const { return cdf_; }

  double lo() const { return grid_.front(); }
  double hi() const { return grid_.back(); }

  double cdf(double x) const;
  double mean() const;

  // Inverse CDF at u in (0, 1). The result is strictly inside (lo, hi) as
  // long as the density vanishes at both ends.
  double quantile(double u) const;

  template <class Stream>
  double sample(Stream& stream) const {
    return quantile(stream.uniform());
  }

 private:
  std::vector<double> grid_;
  std::vector<double> density_;
  std::vector<double> cdf_;
};

struct DiracLaw {
  double x = 0.0;
};

// Law of a starting position: a point mass or a tabulated density.
using InitialLaw = std::variant<DiracLaw, GridDensity>;

template <class Stream>
double sample(const InitialLaw& law, Stream& stream) {
  if (const auto* d = std::get_if<DiracLaw>(&law)) return d->x;
  return std::get<GridDensity>(law).sample(stream);
}

inline bool is_dirac(const InitialLaw& law) {
  return std::holds_alternative<DiracLaw>(law);
}

std::string describe(const InitialLaw& law);

}  // namespace parrep

#endif  // PARREP_DENSITY_HPP_
