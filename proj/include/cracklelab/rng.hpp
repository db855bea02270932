#pragma once

// Portable random streams. std::mt19937_64 is bit-specified by the standard;
// every distribution on top of it is implemented here so that archived seeds
// replay identically across standard libraries.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace cracklelab {

/// Bump whenever any draw below changes.
inline constexpr std::string_view kRngVersion = "mt19937_64/splitmix64-child/polar-normal/ptrs-poisson/v1";

/// Child seed for trial `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Poisson(mean); inversion for mean < 10, Hörmann's PTRS otherwise.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace cracklelab
