#pragma once

#include <cstddef>
#include <span>

#include "despeck/image.hpp"

namespace despeck {

/// Rescales a median absolute value into a Gaussian standard deviation.
inline constexpr double kMadToSigma = 0.6745;

/// Noise level and the universal threshold derived from it.
struct ThresholdEstimate {
  double delta_mad = 0.0;  // robust noise std estimate
  double lambda = 0.0;     // delta_mad * sqrt(2 ln n)
  std::size_t n = 0;       // coefficient count the estimate came from
};

/// median(|coeffs|) / 0.6745. Even-length medians average the two central
/// order statistics. Throws DimensionError on empty input.
double mad_sigma(std::span<const double> coeffs);

/// lambda = delta_mad * sqrt(2 ln n), natural log. Throws ConfigError if
/// n < 2 or delta_mad is negative.
ThresholdEstimate universal_threshold(double delta_mad, std::size_t n);

/// Zeroes x when |x| <= lambda, otherwise keeps it.
inline double hard_shrink(double x, double lambda) noexcept { return (x <= lambda && x >= -lambda) ? 0.0 : x; }

/// sign(x) * max(|x| - lambda, 0).
inline double soft_shrink(double x, double lambda) noexcept {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

Image hard_threshold(const Image& sub, double lambda);
Image soft_threshold(const Image& sub, double lambda);

}  // namespace despeck
