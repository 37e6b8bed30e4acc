#pragma once

#include <cmath>
#include <cstdint>

namespace sgl0 {

// Counter-based 64-bit generator (splitmix64 applied to key ^ counter).
// All sampling in the benchmark harness goes through this class so that
// results are bit-reproducible across platforms, unlike the
// implementation-defined std::normal_distribution.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

  // uniform in (0,1)
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // standard normal via Box-Muller (both uniforms drawn, cosine branch)
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double exponential() { return -std::log(uniform01()); }

  // Rayleigh, scale 1
  double rayleigh() { return std::sqrt(-2.0 * std::log(uniform01())); }

  // Gamma shape 2, scale 1 (sum of two unit exponentials)
  double gamma2() { return exponential() + exponential(); }

  // uniform integer in [0, n)
  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sgl0
