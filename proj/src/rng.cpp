#include "rfnn/rng.hpp"

#include <limits>

#include "rfnn/error.hpp"

namespace rfnn {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RngStream RngStream::child(std::uint64_t index) const {
  return RngStream(mix64(seed_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw InvalidInputError("RngStream::index: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return static_cast<std::size_t>(x % range);
}

int RngStream::sign() { return (next_u64() >> 63) != 0 ? 1 : -1; }

}  // namespace rfnn
