#pragma once

#include <cstdint>
#include <random>

namespace smtjsim {

// splitmix64: statistically solid 64-bit mixer, used only to derive
// decorrelated seeds for per-trial mt19937_64 streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic stream derivation: identical (seed, index) always yields an
// identical generator, independent of scheduling. Parallel and serial runs
// therefore produce identical statistics (concurrency contract).
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t base = seed + index * 0x9E3779B97F4A7C15ULL;
  std::seed_seq seq{
      static_cast<std::uint32_t>(splitmix64(base)),
      static_cast<std::uint32_t>(splitmix64(base) >> 32),
      static_cast<std::uint32_t>(splitmix64(base + 1)),
      static_cast<std::uint32_t>(splitmix64(base + 1) >> 32),
      static_cast<std::uint32_t>(splitmix64(base + 2)),
      static_cast<std::uint32_t>(splitmix64(base + 2) >> 32),
  };
  return std::mt19937_64(seq);
}

}  // namespace smtjsim
