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

// Command-line driver. Links only against the C interface.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "parrep/parrep.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int report(parrep_status status) {
  std::cerr << "parrep: " << parrep_status_name(status) << ": "
            << parrep_last_error() << "\n";
  return status == PARREP_ERR_CONFIG || status == PARREP_ERR_INVALID_ARGUMENT
             ? kExitConfig
             : kExitFailure;
}

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = "results";
  unsigned workers = 1;
  std::vector<std::string> sets;
};

int run(const std::string& experiment, const Options& opt) {
  parrep_config* cfg = nullptr;
  parrep_status st = parrep_config_create(&cfg);
  if (st != PARREP_OK) return report(st);
  if (!opt.config_path.empty()) st = parrep_config_load_file(cfg, opt.config_path.c_str());
  for (std::size_t i = 0; st == PARREP_OK && i < opt.sets.size(); ++i) {
    st = parrep_config_assign(cfg, opt.sets[i].c_str());
  }
  if (st == PARREP_OK && opt.seed_given) {
    st = parrep_config_set(cfg, "seed", std::to_string(opt.seed).c_str());
  }
  parrep_result* res = nullptr;
  if (st == PARREP_OK) st = parrep_run(cfg, experiment.c_str(), opt.workers, &res);
  parrep_config_destroy(cfg);
  if (st != PARREP_OK) return report(st);

  st = parrep_result_write(res, opt.out.c_str());
  if (st != PARREP_OK) {
    parrep_result_destroy(res);
    return report(st);
  }
  std::cout << "experiment " << experiment << " config_hash="
            << parrep_result_config_hash(res) << "\n";
  const std::string summary = parrep_result_summary(res);
  if (!summary.empty()) {
    std::cout << summary;
    if (summary.back() != '\n') std::cout << "\n";
  }
  for (std::size_t i = 0; i < parrep_result_artifact_count(res); ++i) {
    std::cout << "wrote " << opt.out << "/" << parrep_result_artifact_name(res, i) << "\n";
  }
  const bool passed = parrep_result_passed(res) != 0;
  parrep_result_destroy(res);
  return passed ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel replica dynamics experiments"};
  app.set_version_flag("--version", parrep_version());
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "key=value configuration file")
      ->check(CLI::ExistingFile);
  auto* seed = app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--out", opt.out, "output directory")->capture_default_str();
  app.add_option("--workers", opt.workers, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--set", opt.sets, "override a setting (key=value)")
      ->allow_extra_args(false);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "Dirichlet eigenvalues, QSD and exit law of one well"},
      {"serial", "unaccelerated exit or first-passage times"},
      {"parrep", "ParRep cycles in one well or across the lattice"},
      {"fig3", "exit-side bias of dephasing with small t_phase"},
      {"fig4", "serial vs ParRep first passage on the cosine lattice"},
      {"qsd-exit-law", "exit time and side law from the QSD"},
      {"validate", "run the acceptance checks"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }
  opt.seed_given = seed->count() > 0;
  const std::string experiment = app.get_subcommands().front()->get_name();
  return run(experiment, opt);
}
