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

#include "parrep/parallel_replica.hpp"

#include <algorithm>

namespace parrep {

ParRepConfig ParRepConfig::make(std::size_t n_replicas, double t_corr,
                                double t_phase, double dt, InitialLaw mu0,
                                InitialLaw mu0_phase, std::uint64_t seed) {
  if (!(t_corr > 0.0) || !(t_phase > 0.0)) {
    throw InvalidArgument("parrep config: t_corr and t_phase must be positive");
  }
  ParRepConfig cfg;
  cfg.n_replicas = n_replicas;
  cfg.dt = dt;
  cfg.corr_steps = steps_for(t_corr, dt);
  cfg.phase_steps = steps_for(t_phase, dt);
  cfg.mu0 = std::move(mu0);
  cfg.mu0_phase = std::move(mu0_phase);
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void ParRepConfig::validate() const {
  if (n_replicas < 1) throw InvalidArgument("parrep config: need N >= 1");
  if (n_replicas - 1 > kMaxStreamSlot) {
    throw InvalidArgument("parrep config: too many replicas for the stream layout");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("parrep config: dt must be positive");
  }
  if (corr_steps < 1 || phase_steps < 1) {
    throw InvalidArgument(
        "parrep config: t_corr and t_phase must be at least one step");
  }
  if (relaunch_cap > kMaxStreamAttempt) {
    throw InvalidArgument("parrep config: relaunch cap exceeds the stream layout");
  }
}

std::string_view to_string(ExitPhase phase) {
  return phase == ExitPhase::kDecorrelation ? "decorrelation" : "parallel";
}

std::size_t first_exit_index(std::span<const std::int64_t> exit_steps) {
  if (exit_steps.empty()) {
    throw InvalidArgument("first_exit_index: no replicas");
  }
  return static_cast<std::size_t>(
      std::min_element(exit_steps.begin(), exit_steps.end()) -
      exit_steps.begin());
}

}  // namespace parrep
