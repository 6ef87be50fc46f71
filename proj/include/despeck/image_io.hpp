#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "despeck/image.hpp"

namespace despeck {

using Bytes = std::vector<std::uint8_t>;

struct PgmImage {
  Image image;
  unsigned maxval = 255;
};

/// Decodes a binary (P5) PGM. Samples are one byte when maxval < 256 and two
/// big-endian bytes otherwise. Comments are accepted anywhere in the header.
/// Throws ParseError with the offending byte offset.
PgmImage decode_pgm(std::span<const std::uint8_t> bytes);

/// decode_pgm without the maxval.
Image read_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as P5 with header "P5\n<cols> <rows>\n<maxval>\n". Pixels are
/// clamped to [0, maxval] and rounded to nearest. maxval must be 255 or 65535.
Bytes write_pgm(const Image& img, unsigned maxval);

/// Lossless real-valued format: "F64\n<rows> <cols>\n" followed by row-major
/// little-endian IEEE-754 doubles.
Bytes write_f64(const Image& img);
Image read_f64(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace despeck
