#pragma once

#include <cmath>
#include <cstdint>

#include "fso_acq/constants.hpp"

namespace fso_acq {

/// Name/version string recorded in run manifests so results stay attributable
/// to the exact generator scheme.
inline constexpr const char* kRngDescription =
    "xoshiro256++ (substreams keyed by splitmix64(seed, stream), Box-Muller normals) v1";

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic counter-keyed random stream. Stream i of seed s is derived
/// purely from (s, i), so trial results never depend on execution order or
/// thread count. Not std::<random>-based: identical output on every platform
/// with IEEE doubles and the same libm.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t key = seed;
    std::uint64_t mixed = splitmix64_next(key) ^ (0x6a09e667f3bcc909ULL * (stream + 1));
    for (auto& word : state_) {
      word = splitmix64_next(mixed);
    }
    // xoshiro256++ requires a nonzero state; splitmix output of any key makes
    // all-zero astronomically unlikely, but guard anyway.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 1;
    }
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t x, int k) {
      return (x << k) | (x >> (64 - k));
    };
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1]: 53 random bits, never zero, so log() is always safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace fso_acq
