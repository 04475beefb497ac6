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

#include "parrep/spectral.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "parrep/error.hpp"
#include "parrep/tridiagonal.hpp"

namespace parrep {
namespace {

double trapezoid(std::span<const double> f, double h) {
  double s = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) s += f[i - 1] + f[i];
  return 0.5 * h * s;
}

// Linear interpolation of a density tabulated on `grid` at x.
double interpolate(std::span<const double> grid, std::span<const double> f,
                   double x) {
  if (x <= grid.front()) return x == grid.front() ? f.front() : 0.0;
  if (x >= grid.back()) return x == grid.back() ? f.back() : 0.0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const auto i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double s = (x - grid[i]) / (grid[i + 1] - grid[i]);
  return (1.0 - s) * f[i] + s * f[i + 1];
}

}  // namespace

//---------------------------------------------------------------------------//
// Spectrum
//---------------------------------------------------------------------------//

Spectrum::Spectrum(const Potential& potential, const WellSpec& well,
                   std::size_t grid_intervals, std::size_t modes)
    : well_(well), beta_(potential.beta()) {
  well.validate();
  if (grid_intervals < 200) {
    throw InvalidArgument("eigensolve: need at least 200 grid intervals");
  }
  if (modes < 2 || modes >= grid_intervals - 1) {
    throw InvalidArgument("eigensolve: need 2 <= modes < grid_intervals - 1");
  }
  const std::size_t m = grid_intervals;
  step_ = (well.hi - well.lo) / static_cast<double>(m);
  grid_.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    grid_[i] = well.lo + static_cast<double>(i) * step_;
  }
  grid_[m] = well.hi;

  std::vector<double> node_energy(m + 1);
  std::vector<double> face_energy(m);
  for (std::size_t i = 0; i <= m; ++i) node_energy[i] = potential.value(grid_[i]);
  for (std::size_t i = 0; i < m; ++i) {
    face_energy[i] = potential.value(well.lo + (static_cast<double>(i) + 0.5) * step_);
  }
  energy_shift_ = std::min(*std::min_element(node_energy.begin(), node_energy.end()),
                           *std::min_element(face_energy.begin(), face_energy.end()));
  weight_.resize(m + 1);
  face_weight_.resize(m);
  for (std::size_t i = 0; i <= m; ++i) {
    weight_[i] = std::exp(-beta_ * (node_energy[i] - energy_shift_));
  }
  for (std::size_t i = 0; i < m; ++i) {
    face_weight_[i] = std::exp(-beta_ * (face_energy[i] - energy_shift_));
  }
  weight_integral_ = trapezoid(weight_, step_);

  // Symmetrized operator B^{-1/2} A B^{-1/2} on the m - 1 interior nodes.
  const double scale = 1.0 / (beta_ * step_ * step_);
  SymTridiagonal t;
  t.diag.resize(m - 1);
  t.off.resize(m - 2);
  for (std::size_t i = 1; i < m; ++i) {
    t.diag[i - 1] = (face_weight_[i - 1] + face_weight_[i]) * scale / weight_[i];
    if (i + 1 < m) {
      t.off[i - 1] =
          -face_weight_[i] * scale / std::sqrt(weight_[i] * weight_[i + 1]);
    }
  }
  const auto pairs = lowest_eigenpairs(t, modes);

  values_ = pairs.values;
  const double norm = std::sqrt(weight_integral_ / step_);
  functions_.resize(modes);
  mode_means_.resize(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    auto& u = functions_[k];
    u.assign(m + 1, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
      u[i] = pairs.vectors[k][i - 1] / std::sqrt(weight_[i]) * norm;
    }
    double sign = 1.0;
    if (k == 0) {
      double s = 0.0;
      for (double v : u) s += v;
      sign = s < 0.0 ? -1.0 : 1.0;
    } else {
      sign = u[1] < 0.0 ? -1.0 : 1.0;
    }
    for (double& v : u) v *= sign;
    std::vector<double> uw(m + 1);
    for (std::size_t i = 0; i <= m; ++i) uw[i] = u[i] * weight_[i];
    mode_means_[k] = trapezoid(uw, step_) / weight_integral_;
  }
  if (!(values_[0] > 0.0) || !(values_[0] < values_[1])) {
    std::ostringstream os;
    os << "eigensolve: ground state is not simple and positive (lambda_1="
       << values_[0] << ", lambda_2=" << values_[1] << ")";
    throw NumericError(os.str());
  }
}

double Spectrum::eigenfunction_at(std::size_t k, double x) const {
  const auto& u = functions_.at(k);
  if (!(x >= well_.lo && x <= well_.hi)) return 0.0;
  const double s = (x - well_.lo) / step_;
  auto i = static_cast<std::size_t>(s);
  if (i >= grid_.size() - 1) return u.back();
  const double f = s - static_cast<double>(i);
  return (1.0 - f) * u[i] + f * u[i + 1];
}

double Spectrum::partition_function() const {
  return weight_integral_ * std::exp(-beta_ * energy_shift_);
}

double Spectrum::inner_product(std::span<const double> f,
                               std::span<const double> g) const {
  if (f.size() != grid_.size() || g.size() != grid_.size()) {
    throw InvalidArgument("inner product: functions must live on the grid");
  }
  double s = 0.0;
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    s += c * f[i] * g[i] * weight_[i];
  }
  return s * step_ / weight_integral_;
}

double Spectrum::max_relative_residual() const {
  const std::size_t m = grid_.size() - 1;
  const double scale = 1.0 / (beta_ * step_ * step_);
  double worst = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const auto& u = functions_[k];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double au = scale * (face_weight_[i - 1] * (u[i] - u[i - 1]) -
                                 face_weight_[i] * (u[i + 1] - u[i]));
      const double bu = weight_[i] * u[i];
      num += (au - values_[k] * bu) * (au - values_[k] * bu);
      den += bu * bu;
    }
    worst = std::max(worst, std::sqrt(num / den) / values_[k]);
  }
  return worst;
}

Spectrum Spectrum::with_scaled_eigenvalue(std::size_t k, double scale) const {
  Spectrum copy = *this;
  copy.values_.at(k) *= scale;
  return copy;
}

Spectrum eigensolve(const Potential& potential, const WellSpec& well,
                    std::size_t grid_intervals, std::size_t modes) {
  return Spectrum(potential, well, grid_intervals, modes);
}

//---------------------------------------------------------------------------//
// Derived laws
//---------------------------------------------------------------------------//

QsdDensity qsd(const Spectrum& spec) {
  const auto u = spec.eigenfunction(0);
  const auto w = spec.weight();
  std::vector<double> density(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) density[i] = std::max(0.0, u[i] * w[i]);
  density.front() = 0.0;
  density.back() = 0.0;
  return GridDensity({spec.grid().begin(), spec.grid().end()}, std::move(density));
}

ExitPointLaw exit_point_law(const Spectrum& spec, double tolerance) {
  const auto u = spec.eigenfunction(0);
  const auto w = spec.weight();
  const std::size_t m = u.size() - 1;
  std::vector<double> g(m + 1);
  for (std::size_t i = 0; i <= m; ++i) g[i] = u[i] * w[i];
  const double h = spec.step();
  const double slope_lo = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
  const double slope_hi = (3.0 * g[m] - 4.0 * g[m - 1] + g[m - 2]) / (2.0 * h);
  const double denom = spec.eigenvalue(0) * spec.beta() * trapezoid(g, h);

  ExitPointLaw law;
  law.mass_lo = slope_lo / denom;
  law.mass_hi = -slope_hi / denom;
  law.sum_error = law.mass_lo + law.mass_hi - 1.0;
  if (!(std::abs(law.sum_error) <= tolerance) || law.mass_lo < 0.0 ||
      law.mass_hi < 0.0) {
    std::ostringstream os;
    os.precision(10);
    os << "exit_point_law: masses (" << law.mass_lo << ", " << law.mass_hi
       << ") miss 1 by " << law.sum_error << " (tolerance " << tolerance
       << "); refine the grid";
    throw NumericError(os.str());
  }
  return law;
}

std::vector<double> start_coefficients(const Spectrum& spec,
                                       const InitialLaw& start) {
  std::vector<double> c(spec.modes());
  if (const auto* d = std::get_if<DiracLaw>(&start)) {
    const auto& well = spec.well();
    if (!(d->x >= well.lo && d->x <= well.hi)) {
      throw PreconditionError("survival: Dirac start outside the well");
    }
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = spec.eigenfunction_at(k, d->x);
    return c;
  }
  const auto& g = std::get<GridDensity>(start);
  std::vector<double> on_grid(spec.grid().size());
  for (std::size_t i = 0; i < on_grid.size(); ++i) {
    on_grid[i] = interpolate(g.grid(), g.density(), spec.grid()[i]);
  }
  return start_coefficients(spec, on_grid);
}

std::vector<double> start_coefficients(const Spectrum& spec,
                                       std::span<const double> grid_density) {
  if (grid_density.size() != spec.grid().size()) {
    throw InvalidArgument("start coefficients: density must live on the grid");
  }
  const double mass = trapezoid(grid_density, spec.step());
  if (!(mass > 0.0)) throw InvalidArgument("start coefficients: zero mass");
  std::vector<double> c(spec.modes());
  std::vector<double> prod(grid_density.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto u = spec.eigenfunction(k);
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u[i] * grid_density[i];
    c[k] = trapezoid(prod, spec.step()) / mass;
  }
  return c;
}

double reliability_cutoff(const Spectrum& spec) {
  return 1.0 / spec.eigenvalues().back();
}

SurvivalValue survival_from_coefficients(const Spectrum& spec,
                                         std::span<const double> coefficients,
                                         double t, bool dirac_start) {
  if (!(t >= 0.0)) throw InvalidArgument("survival: t must be non-negative");
  const std::size_t modes = spec.modes();
  // Envelope of the remaining terms, |c_j d_j| for j >= k.
  std::vector<double> tail(modes + 1, 0.0);
  for (std::size_t k = modes; k-- > 0;) {
    tail[k] = std::max(tail[k + 1], std::abs(coefficients[k] * spec.mean_of_mode(k)));
  }
  SurvivalValue out;
  double sum = 0.0;
  bool converged = false;
  for (std::size_t k = 0; k < modes; ++k) {
    const double decay = std::exp(-spec.eigenvalue(k) * t);
    sum += decay * coefficients[k] * spec.mean_of_mode(k);
    ++out.terms;
    if (k + 1 < modes) {
      const double next = std::exp(-spec.eigenvalue(k + 1) * t);
      if (next * tail[k + 1] < 1e-12) {
        converged = true;
        break;
      }
    }
  }
  out.probability = std::clamp(sum, 0.0, 1.0);
  out.reliable = converged && (!dirac_start || t >= reliability_cutoff(spec));
  return out;
}

SurvivalValue survival_oracle(const Spectrum& spec, const InitialLaw& start,
                              double t) {
  const auto c = start_coefficients(spec, start);
  return survival_from_coefficients(spec, c, t, is_dirac(start));
}

std::vector<double> conditioned_density(const Spectrum& spec,
                                        const InitialLaw& start, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("conditioned density: t < 0");
  const auto c = start_coefficients(spec, start);
  const auto w = spec.weight();
  std::vector<double> rho(w.size(), 0.0);
  for (std::size_t k = 0; k < spec.modes(); ++k) {
    const double a = std::exp(-spec.eigenvalue(k) * t) * c[k];
    const auto u = spec.eigenfunction(k);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += a * u[i];
  }
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] *= w[i];
  const double mass = trapezoid(rho, spec.step());
  if (!(mass > 0.0)) throw NumericError("conditioned density: no mass left");
  for (double& v : rho) v /= mass;
  return rho;
}

double conditioned_mean(const Spectrum& spec, const InitialLaw& start,
                        std::span<const double> observable, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("conditioned mean: t < 0");
  const auto c = start_coefficients(spec, start);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < spec.modes(); ++k) {
    const double a = std::exp(-spec.eigenvalue(k) * t) * c[k];
    num += a * spec.inner_product(spec.eigenfunction(k), observable);
    den += a * spec.mean_of_mode(k);
  }
  if (!(den > 0.0)) throw NumericError("conditioned mean: survival vanished");
  return num / den;
}

//---------------------------------------------------------------------------//
// Committor and Weyl's law
//---------------------------------------------------------------------------//

double committor(const Potential& potential, const WellSpec& well, double x0) {
  well.validate();
  if (!(x0 >= well.lo && x0 <= well.hi)) {
    throw PreconditionError("committor: start point outside the closed well");
  }
  if (x0 == well.lo) return 0.0;
  if (x0 == well.hi) return 1.0;
  const double beta = potential.beta();
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    shift = std::max(shift, potential.value(well.lo + (well.hi - well.lo) * i / 1000.0));
  }
  const auto f = [&](double x) { return std::exp(beta * (potential.value(x) - shift)); };
  using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double part = Gk::integrate(f, well.lo, x0, 20, 1e-13);
  const double rest = Gk::integrate(f, x0, well.hi, 20, 1e-13);
  return part / (part + rest);
}

WeylTable weyl_check(const Spectrum& spec, std::size_t first_k,
                     double max_spread) {
  if (spec.modes() < 10) {
    throw InvalidArgument("weyl_check: need at least 10 eigenpairs");
  }
  if (first_k < 1 || first_k > spec.modes()) {
    throw InvalidArgument("weyl_check: first_k out of range");
  }
  WeylTable table;
  table.first_k = first_k;
  for (std::size_t k = 1; k <= spec.modes(); ++k) {
    const double kk = static_cast<double>(k);
    table.ratios.push_back(spec.eigenvalue(k - 1) / (kk * kk));
  }
  const auto first = table.ratios.begin() + static_cast<std::ptrdiff_t>(first_k - 1);
  const auto [mn, mx] = std::minmax_element(first, table.ratios.end());
  table.spread = *mn > 0.0 ? *mx / *mn : std::numeric_limits<double>::infinity();
  table.passed = *mn > 0.0 && table.spread <= max_spread;
  return table;
}

}  // namespace parrep
