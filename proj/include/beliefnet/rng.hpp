#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace beliefnet {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over the tag, then mixed with the master seed.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(master) ^ h);
}

/// Random stream for one purpose ("graph", "understanding", ...).
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard.
/// The real and integer conversions are done here rather than through
/// <random> distributions, whose algorithms vary between standard libraries,
/// so a given (seed, tag) yields the same draws on every toolchain.
class Stream {
 public:
  Stream(std::uint64_t master, std::string_view tag) : engine_(stream_seed(master, tag)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); never returns 0.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform on [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace beliefnet
