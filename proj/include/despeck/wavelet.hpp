#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "despeck/image.hpp"

namespace despeck {

/// Orthogonal two-channel analysis filter bank.
///
/// The highpass taps are the alternating flip of the lowpass,
/// g[k] = (-1)^k h[L-1-k].
struct FilterBank {
  std::string name;
  std::vector<double> lowpass;
  std::vector<double> highpass;

  std::size_t taps() const noexcept { return lowpass.size(); }

  /// Builds a bank from lowpass taps, deriving the highpass by alternating flip.
  static FilterBank from_lowpass(std::string name, std::vector<double> lowpass);
};

/// Daubechies bank with `order` vanishing moments. Supported: 1 (Haar), 2, 4.
/// Throws ConfigError otherwise.
FilterBank daubechies_taps(int order);

/// Resolves "haar", "db1", "db2", "db4".
FilterBank filter_bank_by_name(const std::string& name);

/// One analysis level. All four blocks have half the parent's rows and cols.
///
/// chd is lowpass along rows and highpass along columns (responds to
/// horizontal edges); cvd is the transpose; cdd is highpass both ways.
struct Subbands {
  Image ca;
  Image chd;
  Image cvd;
  Image cdd;
};

/// Detail triple of a single decomposition level.
struct DetailLevel {
  Image chd;
  Image cvd;
  Image cdd;
};

/// Multi-level decomposition. details[0] is level 1 (finest); ca is the
/// approximation at the coarsest level.
struct WaveletDecomposition {
  std::size_t rows = 0;  // original image dimensions, before padding
  std::size_t cols = 0;
  std::vector<DetailLevel> details;
  Image ca;
  FilterBank bank;

  std::size_t levels() const noexcept { return details.size(); }
  /// Total number of stored coefficients.
  std::size_t coefficient_count() const noexcept;
};

/// Separable single-level analysis with periodic extension: rows first, then
/// columns. Both dimensions must be even (DimensionError otherwise).
Subbands dwt2_level(const Image& img, const FilterBank& bank);

/// Synthesis inverse of dwt2_level (columns first, then rows).
Image idwt2_level(const Subbands& sub, const FilterBank& bank);

/// Recursive decomposition of the approximation band. Dimensions that are not
/// multiples of 2^levels are edge-replicated up to the next multiple; idwt2
/// crops back. Throws ConfigError if levels is 0 or exceeds log2(min dim).
WaveletDecomposition dwt2(const Image& img, const FilterBank& bank, std::size_t levels);

Image idwt2(const WaveletDecomposition& dec);

/// Quad-tree, depth-first serialization: for each coarsest-level position (row
/// major) emit ca, chd, cvd, cdd, then recurse into the four children at the
/// next finer level in (0,0), (0,1), (1,0), (1,1) order emitting their
/// chd, cvd, cdd. All coefficients that cover one image block are contiguous.
std::vector<double> serialize_spatial_order(const WaveletDecomposition& dec);

/// Inverse of serialize_spatial_order. `shape` supplies levels, block
/// dimensions, original size and bank; its coefficient values are ignored.
WaveletDecomposition deserialize_spatial_order(std::span<const double> coeffs,
                                               const WaveletDecomposition& shape);

}  // namespace despeck
