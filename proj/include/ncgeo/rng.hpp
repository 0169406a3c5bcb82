#pragma once

#include <cstdint>

#include "ncgeo/scalar.hpp"

namespace ncgeo {

/// SplitMix64 generator.  Used for all sampled property checks so that runs
/// are reproducible from the reported seed, independent of platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : m_state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (m_state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// Small integer in [-3, 3].
  long small_int() { return static_cast<long>(below(7)) - 3; }

  /// Small Gaussian-rational scalar with numerators in [-3, 3] and
  /// denominators in {1, 2, 3}.
  Scalar small_scalar() {
    Scalar re = Scalar::of(small_int(), static_cast<long>(below(3)) + 1);
    Scalar im = Scalar::of(small_int(), static_cast<long>(below(3)) + 1);
    return re + Scalar::i() * im;
  }

  /// Small nonzero rational scalar.
  Scalar small_nonzero() {
    for (;;) {
      Scalar s = small_scalar();
      if (!s.is_zero()) return s;
    }
  }

private:
  std::uint64_t m_state;
};

}  // namespace ncgeo
