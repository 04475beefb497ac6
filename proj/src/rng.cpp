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

#include "parrep/rng.hpp"

#include <string>

#include "parrep/error.hpp"

namespace parrep {

std::uint64_t stream_id(const StreamKey& key) {
  if (key.cycle > kMaxStreamCycle) {
    throw RunawayError("stream id: cycle index " + std::to_string(key.cycle) +
                       " exceeds the stream layout");
  }
  if (key.slot > kMaxStreamSlot) {
    throw RunawayError("stream id: replica slot " + std::to_string(key.slot) +
                       " exceeds the stream layout");
  }
  if (key.attempt > kMaxStreamAttempt) {
    throw RunawayError("stream id: attempt " + std::to_string(key.attempt) +
                       " exceeds the stream layout");
  }
  // [role:2][cycle:18][slot:20][attempt:24]
  return static_cast<std::uint64_t>(key.role) << 62 |
         std::uint64_t{key.cycle} << 44 | std::uint64_t{key.slot} << 24 |
         std::uint64_t{key.attempt};
}

}  // namespace parrep
