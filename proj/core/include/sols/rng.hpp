#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sols {

// Derives decorrelated stream seeds from one run seed. Streams are separated
// by tag so that e.g. changing the policy never shifts the environment draws.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class StreamTag : std::uint64_t {
  class_gen = 1,
  context = 2,
  noise = 3,
  policy = 4,
};

inline std::uint64_t stream_seed(std::uint64_t run_seed, StreamTag tag) {
  std::uint64_t s = run_seed ^ (static_cast<std::uint64_t>(tag) * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

// mt19937_64 with hand-rolled draws. The engine is fully specified by the
// standard; std::*_distribution is not, so we do not use it anywhere results
// must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // Uniform over {0, ..., n-1}, unbiased (rejection).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller (cosine branch only, one draw per call).
  double next_gaussian() {
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sols
