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

#ifndef PARREP_OUTPUT_HPP_
#define PARREP_OUTPUT_HPP_

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "parrep/config.hpp"

namespace parrep {

// A named output file held in memory until written.
struct Artifact {
  std::string name;
  std::string content;
};

struct ExperimentResult {
  std::vector<Artifact> artifacts;
  bool passed = true;
  std::string summary;

  const Artifact* find(std::string_view name) const;
};

// Builds a CSV artifact. The first line is
//   # parrep <experiment> config_hash=<hash>
// followed by one "# key=value" line per resolved setting and the column
// header.
class CsvWriter {
 public:
  CsvWriter(const ExperimentConfig& cfg, std::initializer_list<std::string_view> columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(unsigned long long v);
  CsvWriter& cell(std::size_t v) { return cell(static_cast<unsigned long long>(v)); }
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::string_view v);
  void end_row();

  std::string str() const { return out_; }

 private:
  void separator();

  std::string out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

// Writes every artifact into `dir`, creating it if needed.
void write_artifacts(const ExperimentResult& result, const std::string& dir);

}  // namespace parrep

#endif  // PARREP_OUTPUT_HPP_
