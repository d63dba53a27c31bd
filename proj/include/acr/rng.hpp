#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace acr {

// Seed derivation and random sampling.
//
// Every stochastic component draws from an mt19937_64 whose seed is derived
// from a master seed and a stream tag via the splitmix64 finalizer. Derived
// streams are independent of scheduling, so dataset index 17 produces the
// same dataset whether it is sampled first, last, or on another thread.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Chainable: derive_seed(derive_seed(master, tag), index) etc.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t component) {
  return splitmix64(seed ^ splitmix64(component));
}

// Stream tags used by the harness so that adding a method or dataset never
// perturbs the draws of another.
enum StreamTag : std::uint64_t {
  kStreamDataset = 0x01,
  kStreamAttack = 0x02,
  kStreamSpam = 0x03,
  kStreamPool = 0x04,
  kStreamAblation = 0x05,
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] via multiply-shift reduction.
  int uniform_int(int lo, int hi) {
    const std::uint64_t n = static_cast<std::uint64_t>(hi - lo + 1);
    const auto wide = static_cast<unsigned __int128>(engine_()) * n;
    return lo + static_cast<int>(wide >> 64);
  }

  std::size_t uniform_index(std::size_t n) {
    const auto wide = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  // Standard normal via Box-Muller (no caching: fixed two draws per call).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // First k entries of a uniform random permutation of {0,...,n-1}.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + uniform_index(n - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acr
