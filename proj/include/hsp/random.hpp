#pragma once

#include <cstdint>
#include <random>

namespace hsp {

/// Seeded 64-bit stream. Unit doubles are formed from the top 53 bits so the
/// sequence is identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static RandomStream derive(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(splitmix64(seed) ^ (index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hsp
