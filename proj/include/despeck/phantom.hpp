#pragma once

#include <cstddef>

#include "despeck/image.hpp"

namespace despeck {

/// Piecewise-constant test scene at gray levels 64, 128 and 192.
///
/// The background is split by the main diagonal (64 above, 128 below). Two
/// squares sit on it: a 192 square in the upper triangle and a 64 square in
/// the lower one. Dimensions must be at least 16.
Image make_phantom(std::size_t rows = 256, std::size_t cols = 256);

}  // namespace despeck
