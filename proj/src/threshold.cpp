#include "despeck/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "despeck/error.hpp"

namespace despeck {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("threshold must be nonnegative");
}

template <typename Shrink>
Image apply(const Image& sub, double lambda, Shrink shrink) {
  require_lambda(lambda);
  Image out = sub;
  auto px = out.pixels();
  const auto n = static_cast<std::int64_t>(px.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) px[i] = shrink(px[i], lambda);
  return out;
}

}  // namespace

double mad_sigma(std::span<const double> coeffs) {
  if (coeffs.empty()) throw DimensionError("mad_sigma: empty coefficient sequence");
  std::vector<double> mag(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), mag.begin(), [](double v) { return std::abs(v); });

  const std::size_t mid = mag.size() / 2;
  std::nth_element(mag.begin(), mag.begin() + mid, mag.end());
  double median = mag[mid];
  if (mag.size() % 2 == 0) {
    // Lower central statistic is the largest element of the left partition.
    const double lower = *std::max_element(mag.begin(), mag.begin() + mid);
    median = 0.5 * (lower + median);
  }
  return median / kMadToSigma;
}

ThresholdEstimate universal_threshold(double delta_mad, std::size_t n) {
  if (n < 2) throw ConfigError("universal_threshold: need at least 2 coefficients");
  if (!(delta_mad >= 0.0) || !std::isfinite(delta_mad)) {
    throw ConfigError("universal_threshold: noise estimate must be finite and nonnegative");
  }
  return {delta_mad, delta_mad * std::sqrt(2.0 * std::log(static_cast<double>(n))), n};
}

Image hard_threshold(const Image& sub, double lambda) { return apply(sub, lambda, hard_shrink); }

Image soft_threshold(const Image& sub, double lambda) { return apply(sub, lambda, soft_shrink); }

}  // namespace despeck
