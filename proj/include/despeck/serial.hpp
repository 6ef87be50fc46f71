#pragma once

// Straightforward single-threaded versions of the data-parallel kernels.
// They favour obviousness over speed and exist so tests and benchmarks have
// something independent to compare the OpenMP kernels against.

#include <cstddef>

#include "despeck/image.hpp"
#include "despeck/metrics.hpp"
#include "despeck/speckle.hpp"
#include "despeck/wavelet.hpp"

namespace despeck::serial {

/// Direct 2-D sum ca[i][j] = sum_{m,n} h[m] h[n] x[(2i+m)%R][(2j+n)%C] (and
/// the mixed lowpass/highpass products for the details).
Subbands dwt2_level(const Image& img, const FilterBank& bank);

/// Scatter-form synthesis: every coefficient adds its 2-D basis function.
Image idwt2_level(const Subbands& sub, const FilterBank& bank);

/// Full sort of every window.
Image median_filter_homomorphic(const Image& noisy, std::size_t kernel, const BiasConfig& bias = {});

Image lee_filter(const Image& noisy, std::size_t kernel, double noise_var_ratio);

/// Rows generated in order on a single thread.
Image generate_speckle(std::size_t rows, std::size_t cols, const SpeckleSpec& spec);

/// Sobel by explicit 3x3 kernel correlation.
EdgeMap detect_edges(const Image& img, double tau);

}  // namespace despeck::serial
