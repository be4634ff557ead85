#ifndef WEGNERLAB_RNG_HPP
#define WEGNERLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wegnerlab {

/// SplitMix64: counter-based generator (Weyl sequence + finalizer). Used for
/// seeding and for deriving independent per-realization streams from a
/// 64-bit master seed.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256++ seeded via SplitMix64, following the reference seeding
/// procedure. Streams for distinct (seed, stream) pairs are derived by
/// hashing the pair through SplitMix64 before expansion.
class Xoshiro256PlusPlus {
 public:
  explicit Xoshiro256PlusPlus(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Seed of the independent stream `stream_index` under `master_seed`.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t stream_index) {
  SplitMix64 sm(master_seed ^
                (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
  return sm.next();
}

inline Xoshiro256PlusPlus make_stream(std::uint64_t master_seed,
                                      std::uint64_t stream_index) {
  return Xoshiro256PlusPlus(derive_stream_seed(master_seed, stream_index));
}

/// Standard normal deviate (Box-Muller).
inline double gaussian(Xoshiro256PlusPlus& rng) {
  double u = rng.uniform();
  while (u == 0.0) u = rng.uniform();
  const double v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace wegnerlab

#endif  // WEGNERLAB_RNG_HPP
