#pragma once

#include <cstdint>
#include <random>

namespace epw {

// Seeded generator with platform-independent output. The engine is the
// standard mt19937_64 (its output sequence is fixed by the standard); bounded
// draws use rejection sampling instead of std::uniform_int_distribution,
// whose algorithm is implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Child seed for trial `index` of a run seeded with `base`; used so that
  // parallel trials do not depend on scheduling order.
  static std::uint64_t derive(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace epw
