#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace mforge {

/// Deterministic pseudo-random stream.
///
/// Engine: xoshiro256++ whose state is expanded from a 64-bit seed with
/// splitmix64. The generator is fixed so that identical seeds reproduce
/// identical streams on every platform and in every build.
///
/// split(label) derives an independent child stream from (seed, label) only,
/// never from how much of the parent stream has been consumed, so named
/// subcomponent streams are stable.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  std::uint64_t seed() const noexcept { return seed_; }

  Prng split(std::string_view label) const {
    return Prng(splitmix_pair(seed_, fnv1a64(label)));
  }

  Prng split(std::string_view label, std::uint64_t index) const {
    return Prng(splitmix_pair(splitmix_pair(seed_, fnv1a64(label)), index));
  }

  std::uint64_t next_u64() noexcept {
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

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes two uniforms per draw.
  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Unbiased integer in [0, bound). bound must be positive.
  std::size_t below(std::size_t bound) noexcept {
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<std::size_t>(v % b);
  }

  /// Fisher-Yates shuffle; consumes size-1 draws.
  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix_pair(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t x = a ^ rotl(b, 32);
    std::uint64_t h = splitmix64(x);
    x ^= b;
    return h ^ splitmix64(x);
  }

  static std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace mforge
