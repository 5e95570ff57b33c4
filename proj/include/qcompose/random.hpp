#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace qcompose {

// Seeded generator with platform-independent derived draws. The standard
// distributions are implementation-defined, so bounded integers and unit
// reals are derived from the raw mt19937_64 stream here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  /// Uniform real in [0, 1) with 53 random bits.
  double uniform();
  /// Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcompose
