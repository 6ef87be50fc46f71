#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "despeck/error.hpp"
#include "despeck/pipeline.hpp"

namespace despeck {

namespace {

// Gathers the edge-replicated kernel x kernel window centred on (r, c).
void gather_window(const Image& img, std::size_t r, std::size_t c, std::size_t kernel, std::vector<double>& out) {
  const auto half = static_cast<std::int64_t>(kernel / 2);
  const auto last_r = static_cast<std::int64_t>(img.rows()) - 1;
  const auto last_c = static_cast<std::int64_t>(img.cols()) - 1;
  out.clear();
  for (std::int64_t dr = -half; dr <= half; ++dr) {
    const auto rr = static_cast<std::size_t>(std::clamp(static_cast<std::int64_t>(r) + dr, std::int64_t{0}, last_r));
    auto row = img.row(rr);
    for (std::int64_t dc = -half; dc <= half; ++dc) {
      out.push_back(row[static_cast<std::size_t>(std::clamp(static_cast<std::int64_t>(c) + dc, std::int64_t{0}, last_c))]);
    }
  }
}

}  // namespace

void validate_kernel(const Image& img, std::size_t kernel) {
  if (kernel < 3 || kernel % 2 == 0) throw ConfigError("kernel must be odd and at least 3, got " + std::to_string(kernel));
  require_nonempty(img, "filter");
  if (kernel > img.rows() || kernel > img.cols()) throw DimensionError("kernel larger than image");
}

Image median_filter_homomorphic(const Image& noisy, std::size_t kernel, const BiasConfig& bias) {
  validate_kernel(noisy, kernel);
  const Image logged = log_domain(noisy, bias);
  Image out(noisy.rows(), noisy.cols());
  const auto rows = static_cast<std::int64_t>(noisy.rows());
  const std::size_t mid = kernel * kernel / 2;
#pragma omp parallel
  {
    std::vector<double> window;
    window.reserve(kernel * kernel);
#pragma omp for schedule(static)
    for (std::int64_t ri = 0; ri < rows; ++ri) {
      const auto r = static_cast<std::size_t>(ri);
      for (std::size_t c = 0; c < noisy.cols(); ++c) {
        gather_window(logged, r, c, kernel, window);
        std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(mid), window.end());
        out(r, c) = window[mid];
      }
    }
  }
  Image restored = exp_domain(out, bias);
  for (double& v : restored.pixels()) v = std::max(v, 0.0);
  return restored;
}

Image lee_filter(const Image& noisy, std::size_t kernel, double noise_var_ratio) {
  validate_kernel(noisy, kernel);
  if (!(noise_var_ratio >= 0.0) || !std::isfinite(noise_var_ratio)) {
    throw ConfigError("lee_filter: noise variance ratio must be finite and nonnegative");
  }
  Image out(noisy.rows(), noisy.cols());
  const auto rows = static_cast<std::int64_t>(noisy.rows());
  const double count = static_cast<double>(kernel * kernel);
#pragma omp parallel
  {
    std::vector<double> window;
    window.reserve(kernel * kernel);
#pragma omp for schedule(static)
    for (std::int64_t ri = 0; ri < rows; ++ri) {
      const auto r = static_cast<std::size_t>(ri);
      for (std::size_t c = 0; c < noisy.cols(); ++c) {
        gather_window(noisy, r, c, kernel, window);
        double sum = 0.0;
        for (double v : window) sum += v;
        const double mean = sum / count;
        double ss = 0.0;
        for (double v : window) ss += (v - mean) * (v - mean);
        const double var = ss / count;
        const double gain = var > 0.0 ? std::max(var - mean * mean * noise_var_ratio, 0.0) / var : 0.0;
        out(r, c) = mean + gain * (noisy(r, c) - mean);
      }
    }
  }
  return out;
}

}  // namespace despeck
