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

#include "parrep/model.hpp"

#include <algorithm>
#include <sstream>

#include "parrep/error.hpp"

namespace parrep {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::kFlat:
      return "flat";
    case PotentialKind::kHarmonic:
      return "harmonic";
    case PotentialKind::kCosine:
      return "cosine";
    case PotentialKind::kTable:
      return "table";
  }
  return "unknown";
}

//---------------------------------------------------------------------------//
// CubicTable
//---------------------------------------------------------------------------//

CubicTable::CubicTable(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw InvalidArgument("cubic table: need finite lo < hi");
  }
  if (values_.size() < 3) {
    throw InvalidArgument("cubic table: need at least 3 samples");
  }
  const std::size_t n = values_.size() - 1;
  step_ = (hi_ - lo_) / static_cast<double>(n);

  // Natural spline: M_0 = M_n = 0, interior rows
  // M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i-1} - 2 y_i + y_{i+1}) / h^2.
  second_.assign(n + 1, 0.0);
  if (n >= 2) {
    std::vector<double> diag(n - 1, 4.0);
    std::vector<double> rhs(n - 1);
    const double scale = 6.0 / (step_ * step_);
    for (std::size_t i = 1; i < n; ++i) {
      rhs[i - 1] =
          scale * (values_[i - 1] - 2.0 * values_[i] + values_[i + 1]);
    }
    for (std::size_t i = 1; i < n - 1; ++i) {
      const double w = 1.0 / diag[i - 1];
      diag[i] -= w;
      rhs[i] -= w * rhs[i - 1];
    }
    second_[n - 1] = rhs[n - 2] / diag[n - 2];
    for (std::size_t i = n - 2; i >= 1; --i) {
      second_[i] = (rhs[i - 1] - second_[i + 1]) / diag[i - 1];
    }
  }
}

std::size_t CubicTable::locate(double x, double& t) const {
  if (!(x >= lo_ && x <= hi_)) {
    std::ostringstream os;
    os << "cubic table: x=" << x << " outside [" << lo_ << ", " << hi_
       << "]";
    throw InvalidArgument(os.str());
  }
  const std::size_t n = values_.size() - 1;
  const double s = (x - lo_) / step_;
  auto cell = static_cast<std::size_t>(s);
  cell = std::min(cell, n - 1);
  t = s - static_cast<double>(cell);
  return cell;
}

double CubicTable::value(double x) const {
  double t = 0.0;
  const std::size_t i = locate(x, t);
  const double u = 1.0 - t;
  const double h2 = step_ * step_;
  return u * values_[i] + t * values_[i + 1] +
         h2 / 6.0 *
             ((u * u * u - u) * second_[i] + (t * t * t - t) * second_[i + 1]);
}

double CubicTable::derivative(double x) const {
  double t = 0.0;
  const std::size_t i = locate(x, t);
  const double u = 1.0 - t;
  return (values_[i + 1] - values_[i]) / step_ +
         step_ / 6.0 *
             (-(3.0 * u * u - 1.0) * second_[i] +
              (3.0 * t * t - 1.0) * second_[i + 1]);
}

//---------------------------------------------------------------------------//
// Potential
//---------------------------------------------------------------------------//

Potential::Potential(PotentialKind kind, double beta, double a, double b,
                     std::shared_ptr<const CubicTable> table)
    : kind_(kind), beta_(beta), a_(a), b_(b), table_(std::move(table)) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw InvalidArgument("potential: beta must be positive and finite");
  }
}

Potential Potential::flat(double beta) {
  return Potential(PotentialKind::kFlat, beta, 0.0, 0.0, nullptr);
}

Potential Potential::harmonic(double stiffness, double beta) {
  return Potential(PotentialKind::kHarmonic, beta, stiffness, 0.0, nullptr);
}

Potential Potential::cosine(double amplitude, double wavenumber, double beta) {
  return Potential(PotentialKind::kCosine, beta, amplitude, wavenumber,
                   nullptr);
}

Potential Potential::table(std::shared_ptr<const CubicTable> table,
                           double beta) {
  if (!table) throw InvalidArgument("potential: null table");
  return Potential(PotentialKind::kTable, beta, 0.0, 0.0, std::move(table));
}

std::string Potential::name() const { return std::string(to_string(kind_)); }

double Potential::value(double x) const {
  switch (kind_) {
    case PotentialKind::kFlat:
      return 0.0;
    case PotentialKind::kHarmonic:
      return 0.5 * a_ * x * x;
    case PotentialKind::kCosine:
      return -a_ * std::cos(b_ * x);
    case PotentialKind::kTable:
      return table_->value(x);
  }
  return 0.0;
}

//---------------------------------------------------------------------------//
// Wells
//---------------------------------------------------------------------------//

void WellSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(minimum)) {
    throw InvalidArgument("well: endpoints must be finite");
  }
  if (!(lo < minimum && minimum < hi)) {
    std::ostringstream os;
    os << "well " << label << ": need lo < minimum < hi, got [" << lo << ", "
       << hi << "] with minimum " << minimum;
    throw InvalidArgument(os.str());
  }
}

WellMap WellMap::single(WellSpec well) { return list({well}); }

WellMap WellMap::list(std::vector<WellSpec> wells) {
  if (wells.empty()) throw InvalidArgument("well map: no wells");
  for (const auto& w : wells) w.validate();
  std::sort(wells.begin(), wells.end(),
            [](const WellSpec& a, const WellSpec& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < wells.size(); ++i) {
    if (wells[i].lo < wells[i - 1].hi) {
      throw InvalidArgument("well map: wells overlap");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (wells[i].label == wells[j].label) {
        throw InvalidArgument("well map: duplicate label");
      }
    }
  }
  WellMap map;
  map.kind_ = WellMapKind::kSingle;
  map.wells_ = std::move(wells);
  return map;
}

WellMap WellMap::periodic_lattice() {
  WellMap map;
  map.kind_ = WellMapKind::kPeriodicLattice;
  return map;
}

std::optional<int> WellMap::select(double x) const {
  if (!std::isfinite(x)) return std::nullopt;
  if (kind_ == WellMapKind::kPeriodicLattice) {
    const double j = std::round(0.5 * x);
    const WellSpec w{static_cast<int>(j), 2.0 * j - 1.0, 2.0 * j + 1.0,
                     2.0 * j};
    if (w.contains(x)) return w.label;
    return std::nullopt;
  }
  for (const auto& w : wells_) {
    if (w.contains(x)) return w.label;
  }
  return std::nullopt;
}

WellSpec WellMap::well(int label) const {
  if (kind_ == WellMapKind::kPeriodicLattice) {
    const double j = label;
    return WellSpec{label, 2.0 * j - 1.0, 2.0 * j + 1.0, 2.0 * j};
  }
  for (const auto& w : wells_) {
    if (w.label == label) return w;
  }
  throw InvalidArgument("well map: unknown label " + std::to_string(label));
}

}  // namespace parrep
