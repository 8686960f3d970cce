#pragma once

#include <cstdint>
#include <random>

namespace uavcache::rng {

using Engine = std::mt19937_64;

// Purpose-specific streams split off the master seed. Toggling one consumer
// (e.g. exploration) never shifts the draws seen by another.
enum class Stream : std::uint64_t {
  kWorkload = 0,
  kProfiles = 1,
  kExploration = 2,
  kInitialCaches = 3,
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for sub-stream `index` of `stream` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return derive_seed(master, static_cast<std::uint64_t>(stream), index);
}

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

}  // namespace uavcache::rng
