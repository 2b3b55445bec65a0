#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oclab {

std::uint64_t splitmix64(std::uint64_t& state);
// Independent seed for shard `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// 53 random bits mapped to [0, 1); the same on every platform.
inline double unit_double(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

inline constexpr std::size_t kShardSize = 1 << 16;

// Area-uniform points (r = √u) in the open disk, drawn shard by shard with
// derived seeds and visited in shard order: f(index, z).
template <class F>
void for_each_disk_sample(std::size_t n, std::uint64_t seed, F&& f) {
  std::size_t shards = (n + kShardSize - 1) / kShardSize;
  for (std::size_t s = 0; s < shards; ++s) {
    std::mt19937_64 gen(derive_seed(seed, s));
    std::size_t end = std::min(n, (s + 1) * kShardSize);
    for (std::size_t i = s * kShardSize; i < end; ++i) {
      double r = std::sqrt(unit_double(gen()));
      double theta = 2 * std::numbers::pi * unit_double(gen());
      f(i, std::polar(r, theta));
    }
  }
}

std::vector<std::complex<double>> disk_samples(std::size_t n, std::uint64_t seed);

}  // namespace oclab
