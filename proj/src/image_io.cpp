#include "despeck/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "despeck/error.hpp"

namespace despeck {

namespace {

// Header tokenizer shared by the PGM and F64 readers.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  std::size_t token_start() const { return token_start_; }

  void expect_magic(std::string_view magic) {
    if (bytes_.size() < magic.size() ||
        std::memcmp(bytes_.data(), magic.data(), magic.size()) != 0) {
      throw ParseError("bad magic number (expected " + std::string(magic) + ")", 0);
    }
    pos_ = magic.size();
  }

  // Skips whitespace and '#' comments, then reads a decimal integer.
  unsigned long long next_uint(const char* what, bool allow_comments) {
    skip_space(allow_comments);
    const std::size_t start = pos_;
    token_start_ = start;
    unsigned long long v = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) throw ParseError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return v;
  }

  // Exactly one whitespace byte separates the header from the payload.
  void single_space() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw ParseError("expected single whitespace before payload", pos_);
    }
    ++pos_;
  }

 private:
  static bool is_space(std::uint8_t b) { return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' || b == '\f'; }

  void skip_space(bool allow_comments) {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (allow_comments && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= bytes_.size()) throw ParseError("truncated header", pos_);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
};

void append(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

}  // namespace

PgmImage decode_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader hdr(bytes);
  hdr.expect_magic("P5");
  const auto cols = hdr.next_uint("width", true);
  if (cols == 0) throw ParseError("zero image width", hdr.token_start());
  const auto rows = hdr.next_uint("height", true);
  if (rows == 0) throw ParseError("zero image height", hdr.token_start());
  const auto maxval = hdr.next_uint("maxval", true);
  if (maxval == 0 || maxval > 65535) throw ParseError("maxval out of range [1, 65535]", hdr.token_start());
  hdr.single_space();

  const std::size_t payload = hdr.pos();
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t need = rows * cols * sample_bytes;
  if (bytes.size() - payload < need) {
    throw ParseError("truncated payload: need " + std::to_string(need) + " bytes, have " +
                         std::to_string(bytes.size() - payload),
                     bytes.size());
  }

  std::vector<double> px(rows * cols);
  const std::uint8_t* p = bytes.data() + payload;
  for (std::size_t i = 0; i < px.size(); ++i) {
    unsigned v = sample_bytes == 1 ? p[i] : (unsigned{p[2 * i]} << 8) | p[2 * i + 1];
    if (v > maxval) throw ParseError("sample exceeds maxval", payload + i * sample_bytes);
    px[i] = static_cast<double>(v);
  }
  return {Image(rows, cols, std::move(px)), static_cast<unsigned>(maxval)};
}

Image read_pgm(std::span<const std::uint8_t> bytes) { return decode_pgm(bytes).image; }

Bytes write_pgm(const Image& img, unsigned maxval) {
  if (maxval != 255 && maxval != 65535) throw ConfigError("write_pgm: maxval must be 255 or 65535");
  require_nonempty(img, "write_pgm");
  Bytes out;
  append(out, "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n" +
                  std::to_string(maxval) + "\n");
  const double top = maxval;
  out.reserve(out.size() + img.size() * (maxval == 255 ? 1 : 2));
  for (double v : img.pixels()) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, top)));
    if (maxval == 255) {
      out.push_back(static_cast<std::uint8_t>(q));
    } else {
      out.push_back(static_cast<std::uint8_t>(q >> 8));
      out.push_back(static_cast<std::uint8_t>(q & 0xFF));
    }
  }
  return out;
}

Bytes write_f64(const Image& img) {
  require_nonempty(img, "write_f64");
  Bytes out;
  append(out, "F64\n" + std::to_string(img.rows()) + " " + std::to_string(img.cols()) + "\n");
  for (double v : img.pixels()) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
  return out;
}

Image read_f64(std::span<const std::uint8_t> bytes) {
  HeaderReader hdr(bytes);
  hdr.expect_magic("F64");
  const auto rows = hdr.next_uint("rows", false);
  if (rows == 0) throw ParseError("zero row count", hdr.token_start());
  const auto cols = hdr.next_uint("cols", false);
  if (cols == 0) throw ParseError("zero column count", hdr.token_start());
  hdr.single_space();
  const std::size_t payload = hdr.pos();
  const std::size_t need = rows * cols * 8;
  if (bytes.size() - payload < need) throw ParseError("truncated payload", bytes.size());

  std::vector<double> px(rows * cols);
  const std::uint8_t* p = bytes.data() + payload;
  for (std::size_t i = 0; i < px.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | p[8 * i + b];
    px[i] = std::bit_cast<double>(bits);
    if (!std::isfinite(px[i])) throw ParseError("non-finite sample", payload + 8 * i);
  }
  return Image(rows, cols, std::move(px));
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace despeck
