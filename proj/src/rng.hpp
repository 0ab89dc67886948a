#pragma once

#include <cstdint>

namespace frk {

/// Counter-based generator: value = mix(seed, stream, counter). Every draw is
/// addressed explicitly, so results never depend on evaluation order and
/// repeat runs with one seed are bit-identical.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t stream, std::uint64_t counter) const {
    return mix(seed_ ^ mix(stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull) ^
               mix(counter + 0x9e3779b97f4a7c15ull));
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(at(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t stream, std::uint64_t counter, std::uint64_t n) const {
    return at(stream, counter) % n;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace frk
