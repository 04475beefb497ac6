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

#include "parrep/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "parrep/error.hpp"

namespace parrep {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double inf_norm(const SymTridiagonal& t) {
  double norm = 0.0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

// LU factorization of T - sigma I with partial pivoting, in the layout of
// LAPACK's dgttrf: unit lower bidiagonal L (multipliers in `lower`) and
// upper triangular U with two superdiagonals.
class ShiftedLu {
 public:
  ShiftedLu(const SymTridiagonal& t, double sigma, double tiny)
      : diag_(t.diag), upper_(t.off), lower_(t.off) {
    const std::size_t n = diag_.size();
    for (auto& d : diag_) d -= sigma;
    upper2_.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped_.assign(n > 0 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(diag_[i]) >= std::abs(lower_[i])) {
        if (diag_[i] == 0.0) diag_[i] = tiny;
        const double fact = lower_[i] / diag_[i];
        lower_[i] = fact;
        diag_[i + 1] -= fact * upper_[i];
      } else {
        const double fact = diag_[i] / lower_[i];
        diag_[i] = lower_[i];
        lower_[i] = fact;
        const double temp = upper_[i];
        upper_[i] = diag_[i + 1];
        diag_[i + 1] = temp - fact * diag_[i + 1];
        if (i + 2 < n) {
          upper2_[i] = upper_[i + 1];
          upper_[i + 1] = -fact * upper_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    for (auto& d : diag_) {
      if (std::abs(d) < tiny) d = std::copysign(tiny, d == 0.0 ? 1.0 : d);
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = diag_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= lower_[i] * b[i];
    }
    b[n - 1] /= diag_[n - 1];
    if (n < 2) return;
    b[n - 2] = (b[n - 2] - upper_[n - 2] * b[n - 1]) / diag_[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - upper_[i] * b[i + 1] - upper2_[i] * b[i + 2]) / diag_[i];
    }
  }

 private:
  std::vector<double> diag_;
  std::vector<double> upper_;
  std::vector<double> lower_;
  std::vector<double> upper2_;
  std::vector<bool> swapped_;
};

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
  return s;
}

}  // namespace

std::size_t SymTridiagonal::count_below(double sigma) const {
  const std::size_t n = diag.size();
  double max_off2 = 1.0;
  for (double e : off) max_off2 = std::max(max_off2, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_off2;
  // A vanishing pivot is replaced by -pivmin and counted as negative.
  std::size_t count = 0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q = diag[i] - sigma - (i > 0 ? off[i - 1] * off[i - 1] / q : 0.0);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

void SymTridiagonal::multiply(std::span<const double> x,
                              std::span<double> y) const {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
}

TridiagonalEigenpairs lowest_eigenpairs(const SymTridiagonal& t,
                                        std::size_t count, double tol) {
  const std::size_t n = t.size();
  if (n == 0 || t.off.size() + 1 != n) {
    throw InvalidArgument("tridiagonal: malformed matrix");
  }
  if (count == 0 || count > n) {
    throw InvalidArgument("tridiagonal: requested eigenpair count out of range");
  }

  // Gershgorin interval.
  double glo = std::numeric_limits<double>::infinity();
  double ghi = -glo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    glo = std::min(glo, t.diag[i] - r);
    ghi = std::max(ghi, t.diag[i] + r);
  }
  const double norm = std::max(inf_norm(t), std::numeric_limits<double>::min());
  glo -= 2.0 * kEps * norm;
  ghi += 2.0 * kEps * norm;

  TridiagonalEigenpairs out;
  out.values.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    double lo = j > 0 ? out.values[j - 1] - 2.0 * kEps * norm : glo;
    double hi = ghi;
    for (int iter = 0; iter < 256; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
      if (t.count_below(mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.values[j] = 0.5 * (lo + hi);
  }

  const double tiny = kEps * norm;
  std::vector<double> tv(n);
  for (std::size_t j = 0; j < count; ++j) {
    const double lambda = out.values[j];
    // Perturb the shift slightly so the factorization is not exactly
    // singular.
    const ShiftedLu lu(t, lambda + 4.0 * kEps * norm, tiny);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 1.0 + 0.37 * std::sin(0.7 * static_cast<double>(i + 1) +
                                   static_cast<double>(j));
    }
    normalize(v);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 8; ++iter) {
      lu.solve(v);
      for (std::size_t k = 0; k < j; ++k) {
        const auto& u = out.vectors[k];
        const double dot = std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
      }
      normalize(v);
      t.multiply(v, tv);
      residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = tv[i] - lambda * v[i];
        residual += r * r;
      }
      residual = std::sqrt(residual);
      if (iter >= 1 && residual <= tol * norm) break;
    }
    if (!(residual <= tol * norm)) {
      std::ostringstream os;
      os << "tridiagonal: inverse iteration did not converge for eigenpair "
         << j << " (lambda=" << lambda << ", residual=" << residual
         << ", ||T||=" << norm << ")";
      throw NumericError(os.str());
    }
    out.vectors.push_back(std::move(v));
    out.residuals.push_back(residual);
  }
  return out;
}

}  // namespace parrep
