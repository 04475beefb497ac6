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

#include "parrep/sde.hpp"

#include <limits>
#include <sstream>

#include "parrep/error.hpp"

namespace parrep {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("integrator: dt must be positive and finite");
  }
}

std::string_view to_string(BoundarySide side) {
  return side == BoundarySide::kLo ? "lo" : "hi";
}

std::int64_t steps_for(double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("steps_for: dt must be positive and finite");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("steps_for: time must be non-negative and finite");
  }
  const double n = std::round(t / dt);
  if (n > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw InvalidArgument("steps_for: step count overflows");
  }
  return static_cast<std::int64_t>(n);
}

void check_inside(double x, const WellSpec& well, const char* what) {
  if (!well.contains(x)) {
    std::ostringstream os;
    os << what << " x=" << x << " is not strictly inside well " << well.label
       << " (" << well.lo << ", " << well.hi << ")";
    throw PreconditionError(os.str());
  }
}

ExitEvent run_until_exit(double x0, const WellSpec& well, const Potential& p,
                         const IntegratorConfig& cfg,
                         std::optional<double> horizon) {
  cfg.validate();
  std::int64_t max_steps = -1;
  if (horizon) {
    if (!(*horizon > 0.0)) {
      throw InvalidArgument("run_until_exit: horizon must be positive");
    }
    max_steps = steps_for(*horizon, cfg.dt);
  }
  NormalStream noise(cfg.seed, cfg.stream_id);
  return run_until_exit(x0, well, p, cfg.dt, noise, max_steps);
}

}  // namespace parrep
