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

#ifndef PARREP_RNG_HPP_
#define PARREP_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace parrep {

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based block cipher.
 *
 * Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits. Distinct
 * (key, counter) pairs give statistically independent blocks, so a stream is
 * just a counter range and no generator state needs to be shared.
 */
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Per-realization key derived from the run seed; realizations of one run use
// disjoint keys.
constexpr std::uint64_t realization_seed(std::uint64_t seed,
                                         std::uint64_t realization) {
  return mix64(seed ^ mix64(realization));
}

// What a stream drives within a realization.
enum class StreamRole : std::uint64_t {
  kReference = 0,  // decorrelation walker and serial trajectories
  kDephase = 1,    // one dephasing attempt of one replica
  kParallel = 2,   // one replica during the parallel step
  kSampling = 3,   // draws from initial laws
};

struct StreamKey {
  StreamRole role = StreamRole::kReference;
  std::uint32_t cycle = 0;    // < 2^18
  std::uint32_t slot = 0;     // replica index, < 2^20
  std::uint32_t attempt = 0;  // relaunch count, < 2^24
};

inline constexpr std::uint32_t kMaxStreamCycle = (1u << 18) - 1;
inline constexpr std::uint32_t kMaxStreamSlot = (1u << 20) - 1;
inline constexpr std::uint32_t kMaxStreamAttempt = (1u << 24) - 1;

// Packs a key into a 64-bit stream id. Throws RunawayError when a field is
// out of range.
std::uint64_t stream_id(const StreamKey& key);

//---------------------------------------------------------------------------//
/*!
 * Standard-normal and uniform draws from a single (seed, stream_id) stream.
 *
 * Block i of the stream is Philox(counter = {i, stream_id}, key = seed); each
 * block yields two normals by the Box-Muller transform.
 */
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const auto bits = next_block();
    const double u1 = to_unit(bits[0], bits[1]);
    const double u2 = to_unit(bits[2], bits[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform on the open interval (0, 1).
  double uniform() {
    const auto bits = next_block();
    return to_unit(bits[0], bits[1]);
  }

  std::uint64_t blocks_used() const { return block_; }

 private:
  Philox4x32::Counter next_block() {
    const Philox4x32::Counter ctr{
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    ++block_;
    return Philox4x32::encrypt(ctr, key_);
  }

  static double to_unit(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t x = (std::uint64_t{hi} << 32 | lo) >> 11;
    return (static_cast<double>(x) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Hands out streams for one realization.
class StreamFactory {
 public:
  StreamFactory(std::uint64_t seed, std::uint64_t realization)
      : key_(realization_seed(seed, realization)) {}

  NormalStream operator()(const StreamKey& key) const {
    return NormalStream(key_, stream_id(key));
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

// Noise source that always returns zero; turns the SDE into gradient descent.
struct ZeroNoise {
  double normal() { return 0.0; }
  double uniform() { return 0.5; }
};

struct ZeroNoiseFactory {
  ZeroNoise operator()(const StreamKey&) const { return {}; }
};

}  // namespace parrep

#endif  // PARREP_RNG_HPP_
