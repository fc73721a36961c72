#pragma once

#include <cstdint>
#include <limits>

namespace ertrust {

/// SplitMix64 engine. Small state, cheap to construct, so a fresh engine
/// can be derived for every (stream, key) pair.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

using Rng = SplitMix64;

/// Named random streams. Every consumer of randomness draws from its own
/// keyed substream of the master seed, which keeps draws independent of the
/// order in which other streams are consumed.
enum class Stream : std::uint64_t {
  population = 1,
  scenario = 2,
  qod = 3,
  tie_break = 4,
  random_pick = 5,
  replicate = 6,
};

std::uint64_t mix64(std::uint64_t x);

/// Engine for the substream (seed, stream, a, b).
Rng substream(std::uint64_t seed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0);

} // namespace ertrust
