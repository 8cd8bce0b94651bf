#pragma once

// Counter-based pseudo-random streams. The k-th output is a pure function of
// (seed, k), so disjoint index ranges can be evaluated on any number of
// threads and still reproduce the single-threaded sequence bit for bit.
//
// Algorithm identity (recorded in simulator output metadata): "splitmix64",
// the Steele/Lea/Flood finalizer walked with the 64-bit golden-ratio
// increment. Normals come from Box-Muller over two consecutive outputs.

#include <cmath>
#include <cstdint>

namespace semrdc {

inline constexpr const char* kRngAlgorithm = "splitmix64";

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform on (0, 1]; the open lower end keeps log() finite in Box-Muller.
inline double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
  return 1.0 - (splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

// Independent standard normal pair from counters (2k, 2k+1).
inline void normal_pair_at(std::uint64_t seed, std::uint64_t pair_counter,
                           double& z0, double& z1) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double u1 = uniform01_at(seed, 2 * pair_counter);
  const double u2 = uniform01_at(seed, 2 * pair_counter + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(kTwoPi * u2);
  z1 = r * std::sin(kTwoPi * u2);
}

}  // namespace semrdc
