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

#ifndef PARREP_SPECTRAL_HPP_
#define PARREP_SPECTRAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "parrep/density.hpp"
#include "parrep/model.hpp"

namespace parrep {

inline constexpr std::size_t kDefaultGridIntervals = 12000;
inline constexpr std::size_t kDefaultModes = 20;

//---------------------------------------------------------------------------//
/*!
 * Dirichlet eigenpairs of the generator L = -V' d/dx + beta^{-1} d^2/dx^2 on
 * a single well.
 *
 * The problem is discretized in divergence form,
 *
 *   -beta^{-1} (e^{-beta V} u')' = lambda e^{-beta V} u,  u(lo) = u(hi) = 0,
 *
 * with face-centred weights on a uniform grid, which yields a symmetric
 * generalized eigenproblem with a diagonal mass matrix. Eigenfunctions are
 * orthonormal in <f, g> = int f g e^{-beta V} / Z under trapezoid quadrature,
 * u_1 is positive and higher modes have positive slope at lo.
 */
class Spectrum {
 public:
  Spectrum(const Potential& potential, const WellSpec& well,
           std::size_t grid_intervals, std::size_t modes);

  const WellSpec& well() const { return well_; }
  double beta() const { return beta_; }
  std::size_t modes() const { return values_.size(); }

  std::span<const double> grid() const { return grid_; }
  double step() const { return step_; }
  std::span<const double> eigenvalues() const { return values_; }
  // 0-based: eigenvalue(0) is lambda_1.
  double eigenvalue(std::size_t k) const { return values_.at(k); }
  std::span<const double> eigenfunction(std::size_t k) const {
    return functions_.at(k);
  }
  // Linear interpolation of u_k at x; zero outside the well.
  double eigenfunction_at(std::size_t k, double x) const;

  // e^{-beta (V - V_ref)} at the grid nodes and its trapezoid integral; the
  // shift V_ref cancels from every normalized quantity.
  std::span<const double> weight() const { return weight_; }
  double weight_integral() const { return weight_integral_; }
  double energy_shift() const { return energy_shift_; }
  // Z = int_W e^{-beta V}.
  double partition_function() const;

  // <f, g> in the weighted inner product, for f and g sampled on the grid.
  double inner_product(std::span<const double> f,
                       std::span<const double> g) const;

  // int u_k dmu for the normalized restricted Gibbs measure mu.
  double mean_of_mode(std::size_t k) const { return mode_means_.at(k); }

  // max_k ||A u_k - lambda_k B u_k|| / ||A|| for the discrete operators.
  double max_relative_residual() const;

  // Copy with lambda_k multiplied by `scale` (fault injection for tests).
  Spectrum with_scaled_eigenvalue(std::size_t k, double scale) const;

 private:
  WellSpec well_;
  double beta_;
  double step_;
  double energy_shift_;
  double weight_integral_;
  std::vector<double> grid_;
  std::vector<double> weight_;       // node weights
  std::vector<double> face_weight_;  // weights at cell midpoints
  std::vector<double> values_;
  std::vector<std::vector<double>> functions_;
  std::vector<double> mode_means_;
};

// Lowest `modes` eigenpairs on a grid of `grid_intervals` cells. Requires
// grid_intervals >= 200 and modes >= 2; throws NumericError on solver
// failure.
Spectrum eigensolve(const Potential& potential, const WellSpec& well,
                    std::size_t grid_intervals = kDefaultGridIntervals,
                    std::size_t modes = kDefaultModes);

using QsdDensity = GridDensity;

// Quasistationary density, proportional to u_1 e^{-beta V}.
QsdDensity qsd(const Spectrum& spec);

template <class Stream>
double sample_qsd(const QsdDensity& q, Stream& stream) {
  return q.sample(stream);
}

struct ExitPointLaw {
  double mass_lo = 0.5;
  double mass_hi = 0.5;
  // mass_lo + mass_hi - 1 before any correction.
  double sum_error = 0.0;
};

// Boundary atoms of the exit-point law from the QSD: the outward flux of
// u_1 e^{-beta V} at each endpoint over lambda_1 beta int u_1 e^{-beta V}.
// Throws NumericError if the two masses miss 1 by more than `tolerance`.
ExitPointLaw exit_point_law(const Spectrum& spec, double tolerance = 1e-6);

// Expansion coefficients c_k = int u_k dmu_0 of a starting law.
std::vector<double> start_coefficients(const Spectrum& spec,
                                       const InitialLaw& start);
// Same, for an unnormalized density sampled on the spectrum grid.
std::vector<double> start_coefficients(const Spectrum& spec,
                                       std::span<const double> grid_density);

struct SurvivalValue {
  double probability = 1.0;
  // False for Dirac starts below t = 1/lambda_max, or when the series did
  // not reach the truncation tolerance.
  bool reliable = true;
  std::size_t terms = 0;
};

// P[T > t] = sum_k e^{-lambda_k t} c_k int u_k dmu.
SurvivalValue survival_oracle(const Spectrum& spec, const InitialLaw& start,
                              double t);
SurvivalValue survival_from_coefficients(const Spectrum& spec,
                                         std::span<const double> coefficients,
                                         double t, bool dirac_start);

// Smallest t for which Dirac-start series values are considered reliable.
double reliability_cutoff(const Spectrum& spec);

// Density (on the grid, normalized) of X_t conditioned on T > t.
std::vector<double> conditioned_density(const Spectrum& spec,
                                        const InitialLaw& start, double t);

// E[O(X_t) | T > t] for an observable sampled on the grid.
double conditioned_mean(const Spectrum& spec, const InitialLaw& start,
                        std::span<const double> observable, double t);

// Probability of leaving the well through hi before lo, starting at x0:
// int_lo^x0 e^{beta V} / int_lo^hi e^{beta V}, by adaptive Gauss-Kronrod.
double committor(const Potential& potential, const WellSpec& well, double x0);

struct WeylTable {
  std::vector<double> ratios;  // lambda_k / k^2, k = 1..modes
  double spread = 0.0;         // max / min over k in [first_k, modes]
  std::size_t first_k = 5;
  bool passed = false;
};

// Requires at least 10 modes. Passes when the spread is <= max_spread.
WeylTable weyl_check(const Spectrum& spec, std::size_t first_k = 5,
                     double max_spread = 3.0);

}  // namespace parrep

#endif  // PARREP_SPECTRAL_HPP_
