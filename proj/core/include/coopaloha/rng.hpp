#pragma once

#include <cstdint>
#include <random>

namespace coopaloha {

// Frames use std::mt19937_64; per-trial seeds come from SplitMix64 over the
// master seed and the trial index. Streams are reproducible within one build
// (standard distributions are implementation-defined across libraries).
inline constexpr const char* rng_identifier = "mt19937_64+splitmix64";

using frame_rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
}

}  // namespace coopaloha
