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

#ifndef PARREP_CONFIG_HPP_
#define PARREP_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parrep/model.hpp"

namespace parrep {

// Flat key=value settings. Later assignments override earlier ones.
class Config {
 public:
  // Parses `key = value` lines; blank lines and lines starting with '#' are
  // ignored. Throws ConfigError on malformed lines.
  static Config parse(std::string_view text, std::string_view origin = "<text>");
  static Config load_file(const std::string& path);

  void set(std::string key, std::string value);
  // "key=value"
  void assign(std::string_view assignment);
  void merge(const Config& other);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

enum class Experiment {
  kSpectrum,
  kSerial,
  kParRep,
  kFig3,
  kFig4,
  kQsdExitLaw,
  kValidate,
};

std::string_view to_string(Experiment e);
// Accepts "validate" and "validate-all" for kValidate.
Experiment parse_experiment(std::string_view name);

// How a starting law is specified in a config file.
struct LawSpec {
  enum class Kind { kDirac, kQsd, kMinimum } kind = Kind::kDirac;
  double x = 0.0;
};

LawSpec parse_law(std::string_view text);
std::string format_law(const LawSpec& law);

// Fully resolved experiment settings: defaults for the experiment, then the
// user's config, then derived values.
struct ExperimentConfig {
  Experiment experiment = Experiment::kSpectrum;

  std::string potential_name = "harmonic";
  Potential potential = Potential::harmonic();
  bool lattice = false;
  WellSpec well;  // the single well, or the reference well 0 of the lattice

  double dt = 1e-4;
  std::size_t n_replicas = 100;
  std::vector<std::size_t> fig3_replicas;
  std::vector<double> fig3_t_phase;

  // Exactly one of each pair was given; the other is derived through
  // t = k / (lambda_2 - lambda_1).
  std::optional<double> t_corr_given;
  std::optional<double> k_corr_given;
  std::optional<double> t_phase_given;
  std::optional<double> k_phase_given;
  double t_corr = 0.0;
  double t_phase = 0.0;
  double gap = 0.0;  // lambda_2 - lambda_1 of the reference well (0 if unused)

  std::size_t realizations = 1000;
  std::uint64_t seed = 1;
  LawSpec mu0;
  LawSpec mu0_phase;
  double x0 = 0.0;
  double stop_abs = 9.0;
  std::size_t grid = 12000;
  std::size_t modes = 20;
  std::int64_t max_steps = 200'000'000;
  std::uint32_t relaunch_cap = 1'000'000;
  bool wilson = false;

  std::vector<int> criteria;          // validate: empty means all
  double fault_lambda2_scale = 1.0;   // validate: fault injection hook

  // Every setting, including derived ones, as canonical strings.
  std::map<std::string, std::string> resolved;

  std::string hash() const;  // 16 hex digits of FNV-1a over `resolved`
};

// Throws ConfigError for unknown keys, malformed values or conflicting
// settings.
ExperimentConfig resolve_config(Experiment experiment, const Config& user);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace parrep

#endif  // PARREP_CONFIG_HPP_
