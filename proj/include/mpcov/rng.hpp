#pragma once

#include <cmath>
#include <cstdint>

namespace mpcov {

/// SplitMix64 finalizer; also used to derive stream seeds.
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Stream seed for one trial: mix64(master XOR golden * (trial + 1)). Streams
/// for different trials are decorrelated by the full-avalanche finalizer.
inline uint64_t trial_stream_seed(uint64_t master_seed, uint64_t trial) {
  return mix64(master_seed ^ (kGolden * (trial + 1)));
}

/// Deterministic counter-based generator (SplitMix64). All sampling goes
/// through explicit transforms below, so results depend only on this code,
/// not on standard-library distribution internals.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1], safe as a log argument.
  double next_double_open() { return 1.0 - next_double(); }

 private:
  uint64_t state_;
};

/// Standard normal pairs by the Box-Muller transform; the spare value is
/// cached so scalar draws consume one uniform pair per two normals.
class GaussianSource {
 public:
  explicit GaussianSource(SplitMix64& rng) : rng_(rng) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.next_double_open();
    const double u2 = rng_.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  SplitMix64& rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mpcov
