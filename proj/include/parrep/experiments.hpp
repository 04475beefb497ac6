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

#ifndef PARREP_EXPERIMENTS_HPP_
#define PARREP_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "parrep/config.hpp"
#include "parrep/density.hpp"
#include "parrep/output.hpp"
#include "parrep/parallel_replica.hpp"
#include "parrep/sde.hpp"
#include "parrep/stats.hpp"

namespace parrep {

// Shared Monte Carlo drivers. Realization i of a study draws every stream
// from StreamFactory(seed, offset + i), so results do not depend on the
// number of workers.
struct StudyOptions {
  std::uint64_t seed = 1;
  std::uint64_t offset = 0;
  unsigned workers = 1;
};

// `count` single-well trajectories from `start` until exit (or max_steps).
std::vector<ExitEvent> simulate_exits(const Potential& p, const WellSpec& well,
                                      const InitialLaw& start, double dt,
                                      std::size_t count, std::int64_t max_steps,
                                      const StudyOptions& opt);

// `count` independent dephased replicas (one slot each) launched from `law`.
std::vector<DephasedReplica> dephase_sample(const Potential& p,
                                            const WellSpec& well,
                                            const InitialLaw& law,
                                            double t_phase, double dt,
                                            std::size_t count,
                                            std::uint32_t relaunch_cap,
                                            const StudyOptions& opt);

// `count` parallel steps of N replicas whose positions come from `law`
// (no dephasing).
std::vector<ParallelStepResult> parallel_steps_from(
    const Potential& p, const WellSpec& well, const InitialLaw& law,
    std::size_t n_replicas, double dt, std::size_t count,
    const StudyOptions& opt);

struct Fig3Cell {
  std::size_t n_replicas = 0;
  double t_phase = 0.0;
  std::size_t realizations = 0;
  std::size_t exits_hi = 0;
  double p_hat = 0.0;
  ConfidenceInterval ci;
  double mean_relaunches = 0.0;  // per replica
};

// M realizations of dephasing followed by the parallel step.
Fig3Cell fig3_cell(const Potential& p, const WellSpec& well,
                   const InitialLaw& mu0_phase, std::size_t n_replicas,
                   double t_phase, double dt, std::size_t realizations,
                   std::uint32_t relaunch_cap, bool wilson,
                   const StudyOptions& opt);

std::vector<MultiwellResult> serial_lattice(const Potential& p, double x0,
                                            double stop_abs, double dt,
                                            std::size_t count,
                                            std::int64_t max_steps,
                                            const StudyOptions& opt);

std::vector<MultiwellResult> parrep_lattice(const Potential& p, double x0,
                                            double stop_abs,
                                            const ParRepConfig& cfg,
                                            std::size_t count,
                                            std::int64_t max_steps,
                                            const StudyOptions& opt);

struct Fig4Samples {
  std::vector<double> serial;  // stop times of uncapped realizations
  std::vector<double> parrep;
  std::size_t serial_capped = 0;
  std::size_t parrep_capped = 0;
  KsResult ks;
};

Fig4Samples fig4_samples(const ExperimentConfig& cfg, unsigned workers);

// Runs the experiment named in cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers);

ExperimentResult run_spectrum(const ExperimentConfig& cfg);
ExperimentResult run_serial(const ExperimentConfig& cfg, unsigned workers);
ExperimentResult run_parrep(const ExperimentConfig& cfg, unsigned workers);
ExperimentResult run_fig3(const ExperimentConfig& cfg, unsigned workers);
ExperimentResult run_fig4(const ExperimentConfig& cfg, unsigned workers);
ExperimentResult run_qsd_exit_law(const ExperimentConfig& cfg, unsigned workers);
ExperimentResult run_validate(const ExperimentConfig& cfg, unsigned workers);

}  // namespace parrep

#endif  // PARREP_EXPERIMENTS_HPP_
