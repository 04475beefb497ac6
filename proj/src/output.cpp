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

#include "parrep/output.hpp"

#include <filesystem>
#include <fstream>

#include "parrep/error.hpp"

namespace parrep {

const Artifact* ExperimentResult::find(std::string_view name) const {
  for (const auto& a : artifacts) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

CsvWriter::CsvWriter(const ExperimentConfig& cfg,
                     std::initializer_list<std::string_view> columns)
    : columns_(columns.size()) {
  out_ += "# parrep ";
  out_ += to_string(cfg.experiment);
  out_ += " config_hash=" + cfg.hash() + "\n";
  for (const auto& [k, v] : cfg.resolved) out_ += "# " + k + "=" + v + "\n";
  bool first = true;
  for (auto c : columns) {
    if (!first) out_ += ',';
    out_ += c;
    first = false;
  }
  out_ += '\n';
}

void CsvWriter::separator() {
  if (in_row_ > 0) out_ += ',';
  ++in_row_;
}

CsvWriter& CsvWriter::cell(double v) {
  separator();
  out_ += format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  separator();
  out_ += v;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) {
    throw InvalidArgument("csv: row has " + std::to_string(in_row_) +
                          " cells, expected " + std::to_string(columns_));
  }
  out_ += '\n';
  in_row_ = 0;
}

void write_artifacts(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& a : result.artifacts) {
    const fs::path path = fs::path(dir) / a.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(a.content.data(), static_cast<std::streamsize>(a.content.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace parrep
