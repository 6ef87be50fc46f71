#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "despeck/image.hpp"

namespace despeck {

/// xoshiro256** (Blackman & Vigna) seeded through splitmix64.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Independent stream for row `row` of an image generated with `seed`.
  static Xoshiro256 substream(std::uint64_t seed, std::uint64_t row) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

enum class SpeckleKind {
  rayleigh_amplitude,     // Rayleigh, sigma = sqrt(2/pi)
  exponential_intensity,  // Exp(1)
  gamma_multilook,        // Gamma(L, 1/L)
  none,                   // S == 1, noise-free
};

/// Parses "rayleigh", "exponential", "gamma" (and "none").
SpeckleKind speckle_kind_from_string(const std::string& s);
std::string to_string(SpeckleKind kind);

struct SpeckleSpec {
  SpeckleKind kind = SpeckleKind::gamma_multilook;
  unsigned looks = 3;
  std::uint64_t seed = 0;

  void validate() const;
  /// Population variance of the unit-mean field.
  double variance() const;
};

/// Mean-one multiplicative noise field. Row r is drawn from
/// Xoshiro256::substream(seed, r), so the result does not depend on how rows
/// are distributed across threads.
Image generate_speckle(std::size_t rows, std::size_t cols, const SpeckleSpec& spec);

/// img * S elementwise with S = generate_speckle(img dims, spec). Throws
/// DomainError on negative pixels.
Image apply_speckle(const Image& img, const SpeckleSpec& spec);

}  // namespace despeck
