#include "despeck/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "despeck/error.hpp"

namespace despeck {

namespace {

std::string shape_str(const Image& img) {
  return std::to_string(img.rows()) + "x" + std::to_string(img.cols());
}

}  // namespace

Image::Image(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw DimensionError("image dimensions must be positive");
  if (!std::isfinite(fill)) throw DomainError("image fill value is not finite");
  pixels_.assign(rows * cols, fill);
}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows == 0 || cols == 0) throw DimensionError("image dimensions must be positive");
  if (pixels_.size() != rows * cols) {
    throw DimensionError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (double v : pixels_) {
    if (!std::isfinite(v)) throw DomainError("image contains a non-finite pixel");
  }
}

void BiasConfig::validate() const {
  if (!(bias > 0.0) || !std::isfinite(bias)) throw ConfigError("bias must be positive and finite");
}

Image log_domain(const Image& img, const BiasConfig& cfg) {
  cfg.validate();
  require_nonnegative(img, "log_domain");
  Image out = img;
  auto px = out.pixels();
  const auto n = static_cast<std::int64_t>(px.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) px[i] = std::log(px[i] + cfg.bias);
  return out;
}

Image exp_domain(const Image& img, const BiasConfig& cfg) {
  cfg.validate();
  Image out = img;
  auto px = out.pixels();
  const auto n = static_cast<std::int64_t>(px.size());
  bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
  for (std::int64_t i = 0; i < n; ++i) {
    px[i] = std::exp(px[i]) - cfg.bias;
    overflow = overflow || !std::isfinite(px[i]);
  }
  if (overflow) throw RangeError("exp_domain overflowed to a non-finite value");
  return out;
}

Image subtract(const Image& a, const Image& b) {
  require_same_shape(a, b, "subtract");
  Image out = a;
  auto px = out.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] -= pb[i];
  return out;
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
  }
}

void require_nonempty(const Image& img, const char* what) {
  if (img.empty()) throw DimensionError(std::string(what) + ": empty image");
}

void require_nonnegative(const Image& img, const char* what) {
  auto px = img.pixels();
  if (std::any_of(px.begin(), px.end(), [](double v) { return v < 0.0; })) {
    throw DomainError(std::string(what) + ": negative pixel value");
  }
}

Image pad_replicate(const Image& img, std::size_t rows, std::size_t cols) {
  require_nonempty(img, "pad_replicate");
  if (rows < img.rows() || cols < img.cols()) throw DimensionError("pad_replicate: target smaller than image");
  if (rows == img.rows() && cols == img.cols()) return img;
  Image out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t sr = std::min(r, img.rows() - 1);
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = img(sr, std::min(c, img.cols() - 1));
  }
  return out;
}

Image crop(const Image& img, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > img.rows() || cols > img.cols()) {
    throw DimensionError("crop: window outside image");
  }
  if (rows == img.rows() && cols == img.cols()) return img;
  Image out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = img.row(r).first(cols);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace despeck
