#pragma once

#include <cmath>
#include <cstdint>

namespace bmoo {

/// Deterministic counter-free PRNG (xoshiro256**) with splitmix64 seeding.
/// All stochastic components derive independent streams from a master seed
/// so that runs are reproducible under any thread count and resumable by
/// replaying the stream keys.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no cached spare, keeps streams simple).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586 * u2);
  }

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

/// Stream keys used by the optimizer; combined with the eval id of the next
/// simulator call so a resumed run replays the identical stream.
enum class Stream : std::uint64_t {
  doe = 0x1,
  gp_restarts = 0x2,
  smc_init = 0x3,
  smc_moves = 0x4,
  mc_refs = 0x5,
  misc = 0x6,
};

inline Rng make_stream(std::uint64_t master, Stream stream,
                       std::uint64_t index = 0, std::uint64_t sub = 0) {
  std::uint64_t x = master;
  std::uint64_t h = Rng::splitmix64(x);
  x = h ^ (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ULL);
  h = Rng::splitmix64(x);
  x = h ^ (index * 0xbf58476d1ce4e5b9ULL);
  h = Rng::splitmix64(x);
  x = h ^ (sub * 0x94d049bb133111ebULL);
  return Rng(Rng::splitmix64(x));
}

}  // namespace bmoo
