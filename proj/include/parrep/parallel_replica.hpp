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

#ifndef PARREP_PARALLEL_REPLICA_HPP_
#define PARREP_PARALLEL_REPLICA_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parrep/density.hpp"
#include "parrep/error.hpp"
#include "parrep/model.hpp"
#include "parrep/rng.hpp"
#include "parrep/sde.hpp"

namespace parrep {

struct ParRepConfig {
  std::size_t n_replicas = 1;
  double dt = 1e-4;
  std::int64_t corr_steps = 0;
  std::int64_t phase_steps = 0;
  InitialLaw mu0 = DiracLaw{0.0};
  InitialLaw mu0_phase = DiracLaw{0.0};
  std::uint64_t seed = 0;
  std::uint32_t relaunch_cap = 1'000'000;
  // Upper bound on lockstep steps in one parallel step.
  std::int64_t parallel_step_cap = 4'000'000'000;

  // t_corr and t_phase are rounded to whole steps of dt.
  static ParRepConfig make(std::size_t n_replicas, double t_corr,
                           double t_phase, double dt, InitialLaw mu0,
                           InitialLaw mu0_phase, std::uint64_t seed);

  double t_corr() const { return static_cast<double>(corr_steps) * dt; }
  double t_phase() const { return static_cast<double>(phase_steps) * dt; }

  void validate() const;
};

enum class ExitPhase { kDecorrelation, kParallel };

std::string_view to_string(ExitPhase phase);

struct DephasedReplica {
  double position = 0.0;
  std::uint32_t relaunches = 0;
};

struct ParallelStepResult {
  std::size_t winner = 0;  // 0-based replica index k*
  std::int64_t steps = 0;  // T* / dt
  double exit_point = 0.0;
  BoundarySide side = BoundarySide::kLo;
};

struct CycleOutcome {
  ExitPhase phase = ExitPhase::kDecorrelation;
  // Physical (lab) time in steps of dt: T for a decorrelation exit,
  // corr_steps + N * T* otherwise.
  std::int64_t physical_steps = 0;
  double dt = 0.0;
  std::int64_t parallel_steps = 0;  // T* / dt, zero for decorrelation exits
  double exit_point = 0.0;
  BoundarySide side = BoundarySide::kLo;
  std::optional<int> next_well;
  std::optional<std::size_t> replica_index;
  std::vector<std::uint32_t> relaunch_counts;

  double physical_exit_time() const {
    return static_cast<double>(physical_steps) * dt;
  }
};

struct CoarseEvent {
  std::int64_t steps = 0;
  double time = 0.0;
  int label = 0;
};

// Well labels visited, with the physical time each was entered.
struct CoarseTrajectory {
  std::vector<CoarseEvent> events;

  void record(std::int64_t steps, double dt, int label) {
    if (!events.empty() && events.back().label == label) return;
    events.push_back({steps, static_cast<double>(steps) * dt, label});
  }
};

struct MultiwellResult {
  CoarseTrajectory trajectory;
  std::int64_t stop_steps = 0;
  double dt = 0.0;
  bool capped = false;
  double final_position = 0.0;
  std::size_t cycles = 0;

  double stop_time() const { return static_cast<double>(stop_steps) * dt; }
};

// |x| >= threshold.
struct AbsThreshold {
  double threshold = 9.0;
  bool operator()(double x) const { return std::abs(x) >= threshold; }
};

// Index of the smallest entry, lowest index on ties.
std::size_t first_exit_index(std::span<const std::int64_t> exit_steps);

//---------------------------------------------------------------------------//
/*!
 * Decorrelation: evolve the reference walker from x_enter for corr_steps.
 * Returns the exit event if it leaves the well within t_corr, otherwise a
 * survived event whose final_position is the discarded walker's end point.
 */
template <class Factory>
ExitEvent decorrelation_step(double x_enter, const WellSpec& well,
                             const Potential& p, const ParRepConfig& cfg,
                             const Factory& streams, std::uint32_t cycle = 0) {
  check_inside(x_enter, well, "decorrelation_step: entry point");
  auto noise = streams(StreamKey{StreamRole::kReference, cycle, 0, 0});
  return run_until_exit(x_enter, well, p, cfg.dt, noise, cfg.corr_steps);
}

/*!
 * Dephasing of one replica slot by restart-on-exit: draw from mu0_phase, run
 * for phase_steps, and relaunch with a fresh stream whenever the replica
 * leaves the well before t_phase.
 */
template <class Factory>
DephasedReplica dephase_replica(const WellSpec& well, const Potential& p,
                                const ParRepConfig& cfg, const Factory& streams,
                                std::uint32_t cycle, std::uint32_t slot) {
  for (std::uint32_t attempt = 0;; ++attempt) {
    if (attempt > cfg.relaunch_cap) {
      throw RunawayError(
          "dephase_replica: relaunch cap " + std::to_string(cfg.relaunch_cap) +
          " exceeded; the dephasing launch law is too close to the boundary");
    }
    auto noise = streams(StreamKey{StreamRole::kDephase, cycle, slot, attempt});
    const double start = sample(cfg.mu0_phase, noise);
    check_inside(start, well, "dephase_replica: launch point");
    const ExitEvent ev =
        run_until_exit(start, well, p, cfg.dt, noise, cfg.phase_steps);
    if (ev.survived()) return {ev.final_position, attempt};
  }
}

/*!
 * Parallel step: advance all replicas in lockstep until the first grid time
 * at which one leaves; among replicas leaving on the same step the lowest
 * index wins. This is the argmin over independent full runs, since each
 * replica owns its stream.
 */
template <class Factory>
ParallelStepResult parallel_step(std::span<const double> positions,
                                 const WellSpec& well, const Potential& p,
                                 const ParRepConfig& cfg,
                                 const Factory& streams,
                                 std::uint32_t cycle = 0) {
  if (positions.empty()) {
    throw PreconditionError("parallel_step: no replicas");
  }
  using Noise = decltype(streams(StreamKey{}));
  std::vector<double> x(positions.begin(), positions.end());
  std::vector<Noise> noise;
  noise.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    check_inside(x[k], well, "parallel_step: replica position");
    noise.push_back(streams(StreamKey{StreamRole::kParallel, cycle,
                                      static_cast<std::uint32_t>(k), 0}));
  }
  const double sigma = std::sqrt(2.0 * cfg.dt / p.beta());
  const double dt = cfg.dt;
  for (std::int64_t n = 1; n <= cfg.parallel_step_cap; ++n) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double next = x[k] - p.derivative(x[k]) * dt + sigma * noise[k].normal();
      if (!(well.lo < next && next < well.hi)) {
        return {k, n, next, next <= well.lo ? BoundarySide::kLo : BoundarySide::kHi};
      }
      x[k] = next;
    }
  }
  throw RunawayError("parallel_step: no replica left the well within the step cap");
}

/*!
 * One ParRep cycle in `well`: decorrelation, then (only if the reference
 * survived) dephasing of N replicas and the parallel step. The physical
 * exit time is T for a decorrelation exit and t_corr + N T* otherwise.
 */
template <class Factory>
CycleOutcome parrep_cycle(double x_enter, const WellSpec& well,
                          const WellMap& map, const Potential& p,
                          const ParRepConfig& cfg, const Factory& streams,
                          std::uint32_t cycle = 0) {
  CycleOutcome out;
  out.dt = cfg.dt;
  const ExitEvent ref = decorrelation_step(x_enter, well, p, cfg, streams, cycle);
  if (!ref.survived()) {
    out.phase = ExitPhase::kDecorrelation;
    out.physical_steps = ref.steps;
    out.exit_point = *ref.exit_point;
    out.side = *ref.side;
    out.next_well = map.select(out.exit_point);
    return out;
  }
  std::vector<double> positions(cfg.n_replicas);
  out.relaunch_counts.resize(cfg.n_replicas);
  for (std::size_t k = 0; k < cfg.n_replicas; ++k) {
    const auto r = dephase_replica(well, p, cfg, streams, cycle,
                                   static_cast<std::uint32_t>(k));
    positions[k] = r.position;
    out.relaunch_counts[k] = r.relaunches;
  }
  const auto par = parallel_step(positions, well, p, cfg, streams, cycle);
  out.phase = ExitPhase::kParallel;
  out.parallel_steps = par.steps;
  out.physical_steps =
      cfg.corr_steps + static_cast<std::int64_t>(cfg.n_replicas) * par.steps;
  out.exit_point = par.exit_point;
  out.side = par.side;
  out.replica_index = par.winner;
  out.next_well = map.select(out.exit_point);
  return out;
}

/*!
 * Unaccelerated trajectory from x0 until stop(X) fires, recording the well
 * labels visited. Gives up (capped = true) after max_steps steps.
 */
template <class Factory, class Stop>
MultiwellResult serial_multiwell(double x0, const WellMap& map,
                                 const Potential& p, double dt, const Stop& stop,
                                 const Factory& streams, std::int64_t max_steps) {
  MultiwellResult out;
  out.dt = dt;
  out.final_position = x0;
  const auto first = map.select(x0);
  if (!first) throw PreconditionError("serial_multiwell: x0 is not inside a well");
  out.trajectory.record(0, dt, *first);
  if (stop(x0)) return out;
  auto noise = streams(StreamKey{StreamRole::kReference, 0, 0, 0});
  const double sigma = std::sqrt(2.0 * dt / p.beta());
  double x = x0;
  int label = *first;
  for (std::int64_t n = 1; n <= max_steps; ++n) {
    x += -p.derivative(x) * dt + sigma * noise.normal();
    const auto now = map.select(x);
    if (now && *now != label) {
      label = *now;
      out.trajectory.record(n, dt, label);
    }
    if (stop(x)) {
      out.stop_steps = n;
      out.final_position = x;
      return out;
    }
  }
  out.stop_steps = max_steps;
  out.final_position = x;
  out.capped = true;
  return out;
}

/*!
 * ParRep across wells: one cycle per visited well, each re-entering
 * decorrelation at the exit point of the previous cycle and dephasing from
 * the minimum of the current well. Physical times accumulate across cycles.
 */
template <class Factory, class Stop>
MultiwellResult parrep_multiwell(double x0, const WellMap& map,
                                 const Potential& p, const ParRepConfig& cfg,
                                 const Stop& stop, const Factory& streams,
                                 std::int64_t max_steps) {
  MultiwellResult out;
  out.dt = cfg.dt;
  out.final_position = x0;
  const auto first = map.select(x0);
  if (!first) throw PreconditionError("parrep_multiwell: x0 is not inside a well");
  out.trajectory.record(0, cfg.dt, *first);
  if (stop(x0)) return out;

  ParRepConfig local = cfg;
  double x = x0;
  std::int64_t total = 0;
  std::uint32_t cycle = 0;
  const double sigma = std::sqrt(2.0 * cfg.dt / p.beta());
  while (total < max_steps) {
    const auto label = map.select(x);
    if (!label) {
      // Exactly on a boundary: one plain step to get off it.
      auto noise = streams(StreamKey{StreamRole::kSampling, cycle, kMaxStreamSlot, 0});
      x += -p.derivative(x) * cfg.dt + sigma * noise.normal();
      ++total;
      ++cycle;
      if (stop(x)) break;
      continue;
    }
    const WellSpec well = map.well(*label);
    local.mu0_phase = DiracLaw{well.minimum};
    const CycleOutcome c = parrep_cycle(x, well, map, p, local, streams, cycle);
    ++cycle;
    ++out.cycles;
    total += c.physical_steps;
    x = c.exit_point;
    if (c.next_well) out.trajectory.record(total, cfg.dt, *c.next_well);
    if (stop(x)) break;
  }
  out.stop_steps = total;
  out.final_position = x;
  out.capped = !stop(x);
  return out;
}

}  // namespace parrep

#endif  // PARREP_PARALLEL_REPLICA_HPP_
