#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ncfa::rng {

//! Samplers emit elements in chunks of this size; chunk j of a stream with
//! master seed s is generated from a fresh engine seeded with
//! chunk_seed(s, j).  The layout is part of the reproducibility contract:
//! prefixes of a stream never change when more elements are requested.
inline constexpr std::size_t kChunkSize = 4096;

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

//! Documented mix of (seed, chunk index) used by all chunked samplers.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed + kGolden * (chunk + 1));
}

//! Per-chunk generator.  Uniform doubles come from the top 53 bits of
//! mt19937_64; normals from Box-Muller so the draw count per element is
//! fixed and platform-independent.
class ChunkRng {
 public:
  explicit ChunkRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  void normal_pair(double& z0, double& z1) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    z0 = r * std::cos(phi);
    z1 = r * std::sin(phi);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ncfa::rng
