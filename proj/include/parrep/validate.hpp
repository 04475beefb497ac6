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

#ifndef PARREP_VALIDATE_HPP_
#define PARREP_VALIDATE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace parrep {

// One checked condition of a criterion: `observed <relation> threshold`.
struct Clause {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "<", ">", "=="
  // Wall-clock measurement; left out of the JSON so reports stay reproducible.
  bool timing = false;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Clause> clauses;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // Multiplies lambda_2 of every spectrum computed by the suite.
  double fault_lambda2_scale = 1.0;
};

inline constexpr int kCriterionCount = 11;

std::string criterion_title(int id);

// Runs acceptance criterion `id` (1..11).
CriterionReport run_criterion(int id, const ValidateOptions& opt);

// JSON document describing `reports`.
std::string format_reports(const std::vector<CriterionReport>& reports);

}  // namespace parrep

#endif  // PARREP_VALIDATE_HPP_
