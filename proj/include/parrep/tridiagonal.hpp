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

#ifndef PARREP_TRIDIAGONAL_HPP_
#define PARREP_TRIDIAGONAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace parrep {

// Symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  // Number of eigenvalues strictly below sigma (Sturm sequence count).
  std::size_t count_below(double sigma) const;
  // y = T x
  void multiply(std::span<const double> x, std::span<double> y) const;
};

struct TridiagonalEigenpairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm
  std::vector<double> residuals;             // ||T v - lambda v||
};

// The `count` smallest eigenpairs by Sturm bisection and inverse iteration.
// Throws NumericError if inverse iteration fails to reach a residual of
// `tol` * ||T||.
TridiagonalEigenpairs lowest_eigenpairs(const SymTridiagonal& t,
                                        std::size_t count, double tol = 1e-10);

}  // namespace parrep

#endif  // PARREP_TRIDIAGONAL_HPP_
