#include "despeck/phantom.hpp"

#include "despeck/error.hpp"

namespace despeck {

Image make_phantom(std::size_t rows, std::size_t cols) {
  if (rows < 16 || cols < 16) throw DimensionError("make_phantom: dimensions must be at least 16");
  Image img(rows, cols);
  const std::size_t sr = rows / 4;  // square side along rows
  const std::size_t sc = cols / 4;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      // Diagonal edge through the corners.
      double v = (r * cols > c * rows) ? 128.0 : 64.0;
      // Upper-right square.
      if (r >= rows / 8 && r < rows / 8 + sr && c >= cols * 5 / 8 && c < cols * 5 / 8 + sc) v = 192.0;
      // Lower-left square.
      if (r >= rows * 5 / 8 && r < rows * 5 / 8 + sr && c >= cols / 8 && c < cols / 8 + sc) v = 64.0;
      img(r, c) = v;
    }
  }
  return img;
}

}  // namespace despeck
