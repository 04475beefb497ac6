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

#ifndef PARREP_SDE_HPP_
#define PARREP_SDE_HPP_

#include <cmath>
#include <cstdint>
#include <optional>

#include "parrep/model.hpp"
#include "parrep/rng.hpp"

namespace parrep {

struct IntegratorConfig {
  double dt = 1e-4;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  void validate() const;
};

// Position plus an integer step counter; time is always steps * dt.
struct TrajectoryState {
  double x = 0.0;
  std::int64_t steps = 0;

  double time(double dt) const { return static_cast<double>(steps) * dt; }
};

enum class BoundarySide { kLo, kHi };

std::string_view to_string(BoundarySide side);

struct ExitEvent {
  std::int64_t steps = 0;
  double dt = 0.0;
  // First position outside the open well; absent if the horizon came first.
  std::optional<double> exit_point;
  // Side of the well the exit point lies beyond.
  std::optional<BoundarySide> side;
  // Last position inside the well when survived, otherwise the exit point.
  double final_position = 0.0;

  bool survived() const { return !exit_point.has_value(); }
  double exit_time() const { return static_cast<double>(steps) * dt; }
};

// Number of whole steps closest to `t`; throws InvalidArgument if t < 0 or
// dt <= 0.
std::int64_t steps_for(double t, double dt);

// One Euler-Maruyama step: x' = x - V'(x) dt + sqrt(2 dt / beta) * noise.
inline TrajectoryState em_step(TrajectoryState state, const Potential& p,
                               double dt, double noise) {
  state.x += -p.derivative(state.x) * dt + std::sqrt(2.0 * dt / p.beta()) * noise;
  ++state.steps;
  return state;
}

void check_inside(double x, const WellSpec& well, const char* what);

//---------------------------------------------------------------------------//
/*!
 * Integrate from x0 until the first grid time at which X leaves the open
 * well, or until `max_steps` steps have been taken (max_steps < 0 means no
 * horizon). An exit on step max_steps counts as an exit.
 *
 * `noise` is any object with a `double normal()` member.
 */
template <class Noise>
ExitEvent run_until_exit(double x0, const WellSpec& well, const Potential& p,
                         double dt, Noise& noise, std::int64_t max_steps) {
  check_inside(x0, well, "run_until_exit: start point");
  const double sigma = std::sqrt(2.0 * dt / p.beta());
  const double lo = well.lo;
  const double hi = well.hi;
  double x = x0;
  std::int64_t n = 0;
  ExitEvent ev;
  ev.dt = dt;
  while (max_steps < 0 || n < max_steps) {
    const double next = x - p.derivative(x) * dt + sigma * noise.normal();
    ++n;
    if (!(lo < next && next < hi)) {
      ev.steps = n;
      ev.exit_point = next;
      ev.side = next <= lo ? BoundarySide::kLo : BoundarySide::kHi;
      ev.final_position = next;
      return ev;
    }
    x = next;
  }
  ev.steps = n;
  ev.final_position = x;
  return ev;
}

// Convenience form drawing noise from the (cfg.seed, cfg.stream_id) stream.
ExitEvent run_until_exit(double x0, const WellSpec& well, const Potential& p,
                         const IntegratorConfig& cfg,
                         std::optional<double> horizon = std::nullopt);

}  // namespace parrep

#endif  // PARREP_SDE_HPP_
