#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace thermalwp {

/// SplitMix64 finalizer: bijective 64-bit mixer used to derive keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Inverse standard-normal CDF. A rational tail approximation (max error
/// ~4.5e-4) is polished by three Newton steps on the tail probability via
/// erfc, which lands at double precision for every p in (0,1).
inline double probit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("probit: p must lie in (0,1)");
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  const double q = p < 0.5 ? p : 1.0 - p;
  const double t = std::sqrt(-2.0 * std::log(q));
  double x = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                     (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
  for (int i = 0; i < 3; ++i) {
    const double tail_err = 0.5 * std::erfc(x * kInvSqrt2) - q;
    x += tail_err / (kInvSqrt2Pi * std::exp(-0.5 * x * x));
  }
  return p < 0.5 ? -x : x;
}

namespace detail {

struct U32x4 {
  std::uint32_t v[4];
};

// One Philox 4x32 round.
constexpr U32x4 philox_round(const U32x4& c, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = 0xD2511F53ull * c.v[0];
  const std::uint64_t p1 = 0xCD9E8D57ull * c.v[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {{hi1 ^ c.v[1] ^ k0, lo1, hi0 ^ c.v[3] ^ k1, lo0}};
}

}  // namespace detail

/// Counter-based random stream (Philox 4x32, 10 rounds). Every draw is a pure
/// function of (seed, stream, index, slot), so any sample can be computed
/// independently, in any order, on any worker — no sequential state. The
/// sequence is fixed by the arithmetic alone and thus identical on every
/// platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(mix64(mix64(seed) + stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// 64 uniform bits for draw (index, slot).
  std::uint64_t bits(std::uint64_t index, std::uint32_t slot) const {
    detail::U32x4 c{{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                     slot, 0x77707468u}};
    auto k0 = static_cast<std::uint32_t>(key_);
    auto k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      c = detail::philox_round(c, k0, k1);
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return (static_cast<std::uint64_t>(c.v[0]) << 32) | c.v[1];
  }

  /// Uniform on the open interval (0, 1): ((bits >> 11) + 1/2) * 2^-53.
  double uniform01(std::uint64_t index, std::uint32_t slot) const {
    return (static_cast<double>(bits(index, slot) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal deviate by inverse-CDF transform of uniform01.
  double normal01(std::uint64_t index, std::uint32_t slot) const {
    return probit(uniform01(index, slot));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
};

}  // namespace thermalwp
