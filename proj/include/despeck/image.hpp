#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace despeck {

/// Row-major grid of finite double-precision gray levels.
///
/// Pixels stay real-valued through the whole processing chain; quantization
/// only happens when writing PGM.
class Image {
 public:
  Image() = default;
  /// rows x cols image filled with `fill`. Both dimensions must be positive.
  Image(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `pixels` (row-major). Throws DimensionError on a size
  /// mismatch and DomainError if any value is NaN or infinite.
  Image(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double operator()(std::size_t r, std::size_t c) const noexcept { return pixels_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return pixels_[r * cols_ + c]; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(pixels_).subspan(r * cols_, cols_);
  }
  std::span<double> row(std::size_t r) noexcept { return std::span<double>(pixels_).subspan(r * cols_, cols_); }

  bool same_shape(const Image& other) const noexcept { return rows_ == other.rows_ && cols_ == other.cols_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

/// Offset added before the logarithm so that black pixels stay finite.
struct BiasConfig {
  double bias = 1.0;

  /// Throws ConfigError unless bias is positive and finite.
  void validate() const;
};

/// out = ln(img + bias). Throws DomainError on a negative pixel.
Image log_domain(const Image& img, const BiasConfig& cfg = {});

/// out = exp(img) - bias. Throws RangeError if a result overflows.
Image exp_domain(const Image& img, const BiasConfig& cfg = {});

/// Elementwise a - b. Throws DimensionError on a shape mismatch.
Image subtract(const Image& a, const Image& b);

/// Throws DimensionError when the shapes differ. `what` names the caller.
void require_same_shape(const Image& a, const Image& b, const char* what);

/// Throws DimensionError on an empty image.
void require_nonempty(const Image& img, const char* what);

/// Throws DomainError if any pixel is negative.
void require_nonnegative(const Image& img, const char* what);

/// Edge-replicating pad to (rows, cols); both must be at least the current size.
Image pad_replicate(const Image& img, std::size_t rows, std::size_t cols);

/// Top-left rows x cols window of img.
Image crop(const Image& img, std::size_t rows, std::size_t cols);

}  // namespace despeck
