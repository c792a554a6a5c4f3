#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rfnn {

/// Seeded random stream with deterministic child derivation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Real and integer variates are produced by the conversions below
/// rather than by <random> distributions, whose algorithms are
/// implementation-defined. Child seeds are derived with the SplitMix64
/// finalizer, so `RngStream(s).child(i)` is identical on every platform and
/// independent of how many children were created before it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Stream for sub-task `index`. Does not advance this stream.
  RngStream child(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer on [0, n). Rejection sampling, no modulo bias.
  std::size_t index(std::size_t n);

  /// +1 or -1 with equal probability.
  int sign();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x);

}  // namespace rfnn
