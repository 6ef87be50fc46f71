#include "despeck/serial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "despeck/error.hpp"
#include "despeck/pipeline.hpp"

namespace despeck::serial {

namespace {

std::size_t wrap(std::int64_t i, std::size_t n) {
  const auto len = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((i % len) + len) % len);
}

std::size_t clamp_index(std::int64_t i, std::size_t n) {
  return static_cast<std::size_t>(std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(n) - 1));
}

double window_at(const Image& img, std::int64_t r, std::int64_t c) {
  return img(clamp_index(r, img.rows()), clamp_index(c, img.cols()));
}

}  // namespace

Subbands dwt2_level(const Image& img, const FilterBank& bank) {
  if (img.rows() % 2 || img.cols() % 2) throw DimensionError("serial::dwt2_level: odd dimension");
  const std::size_t hr = img.rows() / 2, hc = img.cols() / 2, taps = bank.taps();
  Subbands out{Image(hr, hc), Image(hr, hc), Image(hr, hc), Image(hr, hc)};
  const auto& h = bank.lowpass;
  const auto& g = bank.highpass;
  for (std::size_t i = 0; i < hr; ++i) {
    for (std::size_t j = 0; j < hc; ++j) {
      double ll = 0, lh = 0, hl = 0, hh = 0;
      for (std::size_t m = 0; m < taps; ++m) {      // along columns (vertical)
        for (std::size_t n = 0; n < taps; ++n) {    // along rows (horizontal)
          const double x = img((2 * i + m) % img.rows(), (2 * j + n) % img.cols());
          ll += h[m] * h[n] * x;
          lh += g[m] * h[n] * x;
          hl += h[m] * g[n] * x;
          hh += g[m] * g[n] * x;
        }
      }
      out.ca(i, j) = ll;
      out.chd(i, j) = lh;
      out.cvd(i, j) = hl;
      out.cdd(i, j) = hh;
    }
  }
  return out;
}

Image idwt2_level(const Subbands& sub, const FilterBank& bank) {
  const std::size_t hr = sub.ca.rows(), hc = sub.ca.cols(), taps = bank.taps();
  const std::size_t rows = 2 * hr, cols = 2 * hc;
  Image out(rows, cols);
  const auto& h = bank.lowpass;
  const auto& g = bank.highpass;
  for (std::size_t i = 0; i < hr; ++i) {
    for (std::size_t j = 0; j < hc; ++j) {
      for (std::size_t m = 0; m < taps; ++m) {
        for (std::size_t n = 0; n < taps; ++n) {
          const std::size_t r = wrap(static_cast<std::int64_t>(2 * i + m), rows);
          const std::size_t c = wrap(static_cast<std::int64_t>(2 * j + n), cols);
          out(r, c) += h[m] * h[n] * sub.ca(i, j) + g[m] * h[n] * sub.chd(i, j) + h[m] * g[n] * sub.cvd(i, j) +
                       g[m] * g[n] * sub.cdd(i, j);
        }
      }
    }
  }
  return out;
}

Image median_filter_homomorphic(const Image& noisy, std::size_t kernel, const BiasConfig& bias) {
  validate_kernel(noisy, kernel);
  const Image logged = log_domain(noisy, bias);
  Image out(noisy.rows(), noisy.cols());
  const auto half = static_cast<std::int64_t>(kernel / 2);
  std::vector<double> window;
  for (std::size_t r = 0; r < noisy.rows(); ++r) {
    for (std::size_t c = 0; c < noisy.cols(); ++c) {
      window.clear();
      for (std::int64_t dr = -half; dr <= half; ++dr)
        for (std::int64_t dc = -half; dc <= half; ++dc)
          window.push_back(window_at(logged, static_cast<std::int64_t>(r) + dr, static_cast<std::int64_t>(c) + dc));
      std::sort(window.begin(), window.end());
      out(r, c) = window[window.size() / 2];
    }
  }
  Image restored = exp_domain(out, bias);
  for (double& v : restored.pixels()) v = std::max(v, 0.0);
  return restored;
}

Image lee_filter(const Image& noisy, std::size_t kernel, double noise_var_ratio) {
  validate_kernel(noisy, kernel);
  Image out(noisy.rows(), noisy.cols());
  const auto half = static_cast<std::int64_t>(kernel / 2);
  const double count = static_cast<double>(kernel * kernel);
  for (std::size_t r = 0; r < noisy.rows(); ++r) {
    for (std::size_t c = 0; c < noisy.cols(); ++c) {
      const auto ri = static_cast<std::int64_t>(r), ci = static_cast<std::int64_t>(c);
      double sum = 0.0;
      for (std::int64_t dr = -half; dr <= half; ++dr)
        for (std::int64_t dc = -half; dc <= half; ++dc) sum += window_at(noisy, ri + dr, ci + dc);
      const double mean = sum / count;
      double ss = 0.0;
      for (std::int64_t dr = -half; dr <= half; ++dr) {
        for (std::int64_t dc = -half; dc <= half; ++dc) {
          const double d = window_at(noisy, ri + dr, ci + dc) - mean;
          ss += d * d;
        }
      }
      const double var = ss / count;
      double gain = 0.0;
      if (var > 0.0) gain = std::max(var - mean * mean * noise_var_ratio, 0.0) / var;
      out(r, c) = mean + gain * (noisy(r, c) - mean);
    }
  }
  return out;
}

Image generate_speckle(std::size_t rows, std::size_t cols, const SpeckleSpec& spec) {
  Image field(rows, cols, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    Xoshiro256 rng = Xoshiro256::substream(spec.seed, r);
    for (std::size_t c = 0; c < cols; ++c) {
      double s = 1.0;
      auto expo = [&rng] { return -std::log1p(-rng.uniform()); };
      switch (spec.kind) {
        case SpeckleKind::rayleigh_amplitude:
          s = std::sqrt(2.0 / std::numbers::pi) * std::sqrt(2.0 * expo());
          break;
        case SpeckleKind::exponential_intensity:
          s = expo();
          break;
        case SpeckleKind::gamma_multilook: {
          double sum = 0.0;
          for (unsigned l = 0; l < spec.looks; ++l) sum += expo();
          s = sum / spec.looks;
          break;
        }
        case SpeckleKind::none:
          break;
      }
      field(r, c) = s;
    }
  }
  return field;
}

EdgeMap detect_edges(const Image& img, double tau) {
  static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  std::vector<double> mag(img.size());
  double peak = 0.0;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      double gx = 0.0, gy = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const double v = window_at(img, static_cast<std::int64_t>(r) + a - 1, static_cast<std::int64_t>(c) + b - 1);
          gx += kx[a][b] * v;
          gy += ky[a][b] * v;
        }
      }
      mag[r * img.cols() + c] = std::hypot(gx, gy);
      peak = std::max(peak, mag[r * img.cols() + c]);
    }
  }
  std::vector<bool> mask(img.size(), false);
  if (peak > 0.0)
    for (std::size_t i = 0; i < mag.size(); ++i) mask[i] = mag[i] >= tau * peak;
  return EdgeMap::from_mask(img.rows(), img.cols(), std::move(mask));
}

}  // namespace despeck::serial
