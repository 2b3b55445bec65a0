#include "oclab/rng.hpp"

namespace oclab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
  splitmix64(state);
  return splitmix64(state);
}

std::vector<std::complex<double>> disk_samples(std::size_t n, std::uint64_t seed) {
  std::vector<std::complex<double>> out(n);
  for_each_disk_sample(n, seed, [&](std::size_t i, std::complex<double> z) { out[i] = z; });
  return out;
}

}  // namespace oclab
