#pragma once

#include <cstdint>
#include <random>

namespace rigc {

using Rng = std::mt19937_64;

/// Purpose of a random stream. Keeping roles apart means that adding draws to
/// one stage never shifts the numbers seen by another stage of the same replica.
enum class StreamRole : std::uint32_t {
  Params = 1,
  Matching = 2,
  Percolation = 3,
  Exploration = 4,
  BranchingProcess = 5,
  Auxiliary = 6,
};

/// Deterministic stream for (seed, replica, role). Independent of thread scheduling.
inline Rng make_stream(std::uint64_t seed, std::uint64_t replica, StreamRole role) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica),
                    static_cast<std::uint32_t>(replica >> 32),
                    static_cast<std::uint32_t>(role)};
  return Rng(seq);
}

inline double exp1(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace rigc
