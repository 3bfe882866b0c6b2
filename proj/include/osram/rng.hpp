#pragma once

#include <cstdint>
#include <random>

namespace osram {

// SplitMix64 step; used to derive independent seeds for per-mode streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Platform-stable uniform double in [0, 1). std::uniform_real_distribution is
// implementation-defined, so generated workloads would differ across
// standard libraries if it were used here.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace osram
