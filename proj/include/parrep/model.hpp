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

#ifndef PARREP_MODEL_HPP_
#define PARREP_MODEL_HPP_

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parrep {

enum class PotentialKind { kFlat, kHarmonic, kCosine, kTable };

std::string_view to_string(PotentialKind kind);

// Natural cubic spline through equally spaced samples of V. Evaluation
// outside [lo, hi] throws InvalidArgument.
class CubicTable {
 public:
  CubicTable(double lo, double hi, std::vector<double> values);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::span<const double> values() const { return values_; }

  double value(double x) const;
  double derivative(double x) const;

 private:
  // Locates the cell of x; t is the local coordinate in [0, 1].
  std::size_t locate(double x, double& t) const;

  double lo_;
  double hi_;
  double step_;
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the knots
};

// Potential energy V, its derivative and the inverse temperature of the
// overdamped Langevin dynamics dX = -V'(X) dt + sqrt(2/beta) dB.
class Potential {
 public:
  // V(x) = 0.
  static Potential flat(double beta = 1.0);
  // V(x) = stiffness/2 * x^2. The default is the V = 2x^2 well.
  static Potential harmonic(double stiffness = 4.0, double beta = 1.0);
  // V(x) = -amplitude * cos(wavenumber * x). The default is -2 cos(pi x).
  static Potential cosine(double amplitude = 2.0,
                          double wavenumber = std::numbers::pi,
                          double beta = 1.0);
  static Potential table(std::shared_ptr<const CubicTable> table,
                         double beta = 1.0);

  PotentialKind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::string name() const;

  double value(double x) const;

  double derivative(double x) const {
    switch (kind_) {
      case PotentialKind::kFlat:
        return 0.0;
      case PotentialKind::kHarmonic:
        return a_ * x;
      case PotentialKind::kCosine:
        return a_ * b_ * std::sin(b_ * x);
      case PotentialKind::kTable:
        return table_->derivative(x);
    }
    return 0.0;
  }

  double force(double x) const { return -derivative(x); }

 private:
  Potential(PotentialKind kind, double beta, double a, double b,
            std::shared_ptr<const CubicTable> table);

  PotentialKind kind_;
  double beta_;
  double a_;
  double b_;
  std::shared_ptr<const CubicTable> table_;
};

inline double force(const Potential& p, double x) { return p.force(x); }

// A bounded interval (lo, hi) around the local minimum `minimum`.
struct WellSpec {
  int label = 0;
  double lo = -1.0;
  double hi = 1.0;
  double minimum = 0.0;

  // Throws InvalidArgument unless lo < minimum < hi with finite endpoints.
  void validate() const;

  // Open interval membership; the endpoints count as exited.
  bool contains(double x) const { return lo < x && x < hi; }
  double width() const { return hi - lo; }
};

enum class WellMapKind { kSingle, kPeriodicLattice };

// Coarse-graining map from a position to the label of the well it lies in.
//
// kSingle holds an explicit list of disjoint wells. kPeriodicLattice is the
// infinite lattice of wells [2j - 1, 2j + 1] with minima at 2j, labelled j,
// matching the period-2 cosine potential.
class WellMap {
 public:
  static WellMap single(WellSpec well);
  static WellMap list(std::vector<WellSpec> wells);
  static WellMap periodic_lattice();

  WellMapKind kind() const { return kind_; }

  // Label of the open well containing x, or nullopt when x is outside every
  // open well (including exactly on a boundary).
  std::optional<int> select(double x) const;

  // The well carrying `label`. Throws InvalidArgument for unknown labels.
  WellSpec well(int label) const;

  std::span<const WellSpec> wells() const { return wells_; }

 private:
  WellMapKind kind_ = WellMapKind::kSingle;
  std::vector<WellSpec> wells_;
};

inline std::optional<int> select_well(const WellMap& map, double x) {
  return map.select(x);
}

}  // namespace parrep

#endif  // PARREP_MODEL_HPP_
