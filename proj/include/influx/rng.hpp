#pragma once

#include <cstdint>
#include <random>

namespace influx {

// One splitmix64 step. Used for seeding and for deriving labeled substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable 64-bit generator. The engine is std::mt19937_64 (sequence fixed by
// the standard); the distribution helpers below are hand-rolled so that
// output is byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0,1) quantized to multiples of 2^-30. Values this coarse
  // survive add/subtract round trips against unit weights exactly, which
  // keeps generated update streams closed under replay.
  double uniform_q30() { return static_cast<double>(next() >> 34) * 0x1.0p-30; }

  // Unbiased uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Independent substream keyed by a caller-chosen label. Derived from the
  // construction seed, so it does not depend on how far this generator has
  // advanced. Does not advance this generator either.
  Rng fork(std::uint64_t label) const {
    std::uint64_t s = seed_ ^ (0xd1b54a32d192ed03ULL * (label + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace influx
