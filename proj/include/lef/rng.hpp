#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>

namespace lef {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a_64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis ^ 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Deterministic random stream with hierarchical derivation. A stream is
// identified by its derivation key: derive() produces an independent child
// stream from the parent key and an index or label, without consuming any
// draws from the parent. Identical derivation paths always yield identical
// draw sequences, regardless of execution order or thread count.
//
// Generator: xoshiro256** seeded via splitmix64. Draw primitives are
// implemented here rather than with <random> distributions so that output
// bytes do not depend on the standard library in use.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(seed) { reseed(); }

  RngStream derive(std::uint64_t index) const {
    std::uint64_t x = key_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return RngStream(detail::splitmix64(x), Derived{});
  }

  RngStream derive(std::string_view label) const {
    std::uint64_t x = detail::fnv1a_64(label, key_);
    return RngStream(detail::splitmix64(x), Derived{});
  }

  std::uint64_t key() const { return key_; }

  std::uint64_t next() {
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

  // [0, 1)
  double uniform_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // (0, 1] -- used where log(0) must be impossible
  double uniform_unit_open0() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // [lo, hi)
  double uniform_real(double lo, double hi) {
    return lo + uniform_unit() * (hi - lo);
  }

  // inclusive on both ends, unbiased
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t n =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (n == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = next();
    } while (x < threshold);
    return lo + static_cast<std::int64_t>(x % n);
  }

  // [0, n)
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
  }

  bool bernoulli(double p) { return uniform_unit() < p; }

  // Box-Muller with cached second value.
  double normal(double mean, double stddev) {
    double z;
    if (spare_) {
      z = *spare_;
      spare_.reset();
    } else {
      const double u1 = uniform_unit_open0();
      const double u2 = uniform_unit();
      const double mag = std::sqrt(-2.0 * std::log(u1));
      const double ang = 2.0 * std::numbers::pi * u2;
      z = mag * std::cos(ang);
      spare_ = mag * std::sin(ang);
    }
    return mean + stddev * z;
  }

 private:
  struct Derived {};
  RngStream(std::uint64_t key, Derived) : key_(key) { reseed(); }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  void reseed() {
    std::uint64_t x = key_;
    for (auto& word : state_) word = detail::splitmix64(x);
  }

  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_;
};

// Draw interface required by the perturbation routines. RngStream is the
// production implementation; tests substitute scripted stubs.
template <typename R>
concept UniformRng = requires(R& r, double d, std::int64_t i, std::size_t n) {
  { r.uniform_unit() } -> std::convertible_to<double>;
  { r.uniform_real(d, d) } -> std::convertible_to<double>;
  { r.uniform_int(i, i) } -> std::convertible_to<std::int64_t>;
  { r.uniform_index(n) } -> std::convertible_to<std::size_t>;
  { r.normal(d, d) } -> std::convertible_to<double>;
};

static_assert(UniformRng<RngStream>);

}  // namespace lef
