#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace lsgas::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t avalanche(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// FNV-1a over the label bytes.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-task seed derivation; part of the external reproducibility contract.
/// Runs are reproducible across any parallel schedule because sample i of
/// task `label` always draws from derive_seed(master, label, i):
///
///   s    = avalanche(master ^ fnv1a64(label))
///   seed = avalanche(s ^ (0x9e3779b97f4a7c15 * (index + 1)))
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                    std::uint64_t index) noexcept {
  const std::uint64_t s = avalanche(master ^ fnv1a64(label));
  return avalanche(s ^ (kGolden * (index + 1)));
}

/// xoshiro256++ engine, state expanded from the 64-bit seed by splitmix64.
/// Satisfies UniformRandomBitGenerator, so the standard distributions accept
/// it; unlike those distributions the raw stream is identical on every
/// platform.
class Xoshiro256PlusPlus {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256PlusPlus(std::uint64_t seed = 0) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += kGolden;  // splitmix64 stream
      word = avalanche(sm);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

// Engine used throughout; per-task streams come from derive_seed.
using Engine = Xoshiro256PlusPlus;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

/// Canonical 53-bit uniform on [0, 1).
inline double uniform_u01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform on [lo, hi) up to rounding at the edges.
inline double uniform_in(Engine& eng, double lo, double hi) {
  return lo + uniform_u01(eng) * (hi - lo);
}

}  // namespace lsgas::rng
