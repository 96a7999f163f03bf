#pragma once

// Reproducible random streams.
//
// Algorithm (fixed so that other implementations can replay results):
//   * derive(purpose, index): with s = seed ^ fnv1a(purpose), a = splitmix64(s),
//     then s = a ^ (index * 0xd1b54a32d192ed03) and the child is splitmix64(s)
//     (splitmix64 advances s by 0x9e3779b97f4a7c15 before mixing);
//   * each stream is a xoshiro256** generator whose four state words are the
//     first four SplitMix64 outputs of the stream seed;
//   * uniform doubles are (next() >> 11) * 2^-53, in [0, 1);
//   * standard normals come from Box-Muller on u1 = 1 - uniform() in (0, 1],
//     u2 = uniform(): r = sqrt(-2 ln u1), returning r cos(2 pi u2) and then
//     the cached r sin(2 pi u2) on the next call;
//   * bounded integers use Lemire's multiply-shift with rejection;
//   * random k-subsets use a partial Fisher-Yates shuffle of 0..n-1, sorted.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace romp {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;
std::uint64_t fnv1a(std::string_view text) noexcept;

/// A seed for one named random stream. Derive children instead of reusing.
struct Seed {
  std::uint64_t value = 0;

  Seed derive(std::string_view purpose, std::uint64_t index = 0) const noexcept;
  friend bool operator==(Seed, Seed) = default;
};

class Rng {
 public:
  explicit Rng(Seed seed) noexcept;

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  double normal() noexcept;
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// +1 or -1 with equal probability.
  double sign() noexcept { return (next() >> 63) ? 1.0 : -1.0; }
  /// Sorted uniformly random subset of size k drawn from {0, ..., n-1}.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace romp
