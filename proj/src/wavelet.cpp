#include "despeck/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "despeck/error.hpp"

namespace despeck {

namespace {

using Index = std::int64_t;

// Periodic index of tap n applied at output k: (2k + n) mod n_in.
inline std::size_t analysis_index(std::size_t k, std::size_t n, std::size_t n_in) { return (2 * k + n) % n_in; }

// For synthesis output m and tap n, the coefficient index k with
// (2k + n) == m (mod n_out), or -1 when m - n is odd.
inline Index synthesis_index(std::size_t m, std::size_t n, std::size_t n_out) {
  const Index d = static_cast<Index>(m) - static_cast<Index>(n);
  if (d & 1) return -1;
  const Index len = static_cast<Index>(n_out);
  return (((d % len) + len) % len) / 2;
}

void validate_bank(const FilterBank& bank) {
  if (bank.lowpass.empty() || bank.lowpass.size() != bank.highpass.size() || bank.lowpass.size() % 2 != 0) {
    throw ConfigError("filter bank '" + bank.name + "' must have an even, matching number of taps");
  }
  for (std::size_t i = 0; i < bank.taps(); ++i) {
    if (!std::isfinite(bank.lowpass[i]) || !std::isfinite(bank.highpass[i])) {
      throw ConfigError("filter bank '" + bank.name + "' has non-finite taps");
    }
  }
}

// Filters every row along its length and downsamples by two.
void analyze_rows(const Image& in, const FilterBank& bank, Image& lo, Image& hi) {
  const std::size_t cols = in.cols();
  const std::size_t half = cols / 2;
  const std::size_t taps = bank.taps();
  const Index rows = static_cast<Index>(in.rows());
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < rows; ++r) {
    auto src = in.row(static_cast<std::size_t>(r));
    auto out_lo = lo.row(static_cast<std::size_t>(r));
    auto out_hi = hi.row(static_cast<std::size_t>(r));
    for (std::size_t k = 0; k < half; ++k) {
      double a = 0.0, d = 0.0;
      for (std::size_t n = 0; n < taps; ++n) {
        const double x = src[analysis_index(k, n, cols)];
        a += bank.lowpass[n] * x;
        d += bank.highpass[n] * x;
      }
      out_lo[k] = a;
      out_hi[k] = d;
    }
  }
}

// Filters every column along its length and downsamples by two.
void analyze_cols(const Image& in, const FilterBank& bank, Image& lo, Image& hi) {
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  const std::size_t taps = bank.taps();
  const Index half = static_cast<Index>(rows / 2);
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < half; ++k) {
    auto out_lo = lo.row(static_cast<std::size_t>(k));
    auto out_hi = hi.row(static_cast<std::size_t>(k));
    std::fill(out_lo.begin(), out_lo.end(), 0.0);
    std::fill(out_hi.begin(), out_hi.end(), 0.0);
    for (std::size_t n = 0; n < taps; ++n) {
      auto src = in.row(analysis_index(static_cast<std::size_t>(k), n, rows));
      const double h = bank.lowpass[n];
      const double g = bank.highpass[n];
      for (std::size_t c = 0; c < cols; ++c) {
        out_lo[c] += h * src[c];
        out_hi[c] += g * src[c];
      }
    }
  }
}

// Upsamples and filters columns: out = synth(lo, hi) along rows of the image.
void synthesize_cols(const Image& lo, const Image& hi, const FilterBank& bank, Image& out) {
  const std::size_t rows = out.rows();
  const std::size_t cols = out.cols();
  const std::size_t taps = bank.taps();
  const Index n_out = static_cast<Index>(rows);
#pragma omp parallel for schedule(static)
  for (Index m = 0; m < n_out; ++m) {
    auto dst = out.row(static_cast<std::size_t>(m));
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::size_t n = 0; n < taps; ++n) {
      const Index k = synthesis_index(static_cast<std::size_t>(m), n, rows);
      if (k < 0) continue;
      auto a = lo.row(static_cast<std::size_t>(k));
      auto d = hi.row(static_cast<std::size_t>(k));
      const double h = bank.lowpass[n];
      const double g = bank.highpass[n];
      for (std::size_t c = 0; c < cols; ++c) dst[c] += h * a[c] + g * d[c];
    }
  }
}

void synthesize_rows(const Image& lo, const Image& hi, const FilterBank& bank, Image& out) {
  const std::size_t cols = out.cols();
  const std::size_t taps = bank.taps();
  const Index rows = static_cast<Index>(out.rows());
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < rows; ++r) {
    auto a = lo.row(static_cast<std::size_t>(r));
    auto d = hi.row(static_cast<std::size_t>(r));
    auto dst = out.row(static_cast<std::size_t>(r));
    for (std::size_t m = 0; m < cols; ++m) {
      double acc = 0.0;
      for (std::size_t n = 0; n < taps; ++n) {
        const Index k = synthesis_index(m, n, cols);
        if (k < 0) continue;
        acc += bank.lowpass[n] * a[static_cast<std::size_t>(k)] + bank.highpass[n] * d[static_cast<std::size_t>(k)];
      }
      dst[m] = acc;
    }
  }
}

void emit_tree(const WaveletDecomposition& dec, std::size_t level, std::size_t r, std::size_t c,
               std::vector<double>& out) {
  const DetailLevel& d = dec.details[level - 1];
  out.push_back(d.chd(r, c));
  out.push_back(d.cvd(r, c));
  out.push_back(d.cdd(r, c));
  if (level == 1) return;
  for (std::size_t dr = 0; dr < 2; ++dr)
    for (std::size_t dc = 0; dc < 2; ++dc) emit_tree(dec, level - 1, 2 * r + dr, 2 * c + dc, out);
}

void absorb_tree(WaveletDecomposition& dec, std::size_t level, std::size_t r, std::size_t c,
                 std::span<const double> in, std::size_t& pos) {
  DetailLevel& d = dec.details[level - 1];
  d.chd(r, c) = in[pos++];
  d.cvd(r, c) = in[pos++];
  d.cdd(r, c) = in[pos++];
  if (level == 1) return;
  for (std::size_t dr = 0; dr < 2; ++dr)
    for (std::size_t dc = 0; dc < 2; ++dc) absorb_tree(dec, level - 1, 2 * r + dr, 2 * c + dc, in, pos);
}

}  // namespace

FilterBank FilterBank::from_lowpass(std::string name, std::vector<double> lowpass) {
  FilterBank bank{std::move(name), std::move(lowpass), {}};
  const std::size_t len = bank.lowpass.size();
  bank.highpass.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    bank.highpass[k] = sign * bank.lowpass[len - 1 - k];
  }
  return bank;
}

FilterBank daubechies_taps(int order) {
  switch (order) {
    case 1: {
      const double s = 1.0 / std::sqrt(2.0);
      return FilterBank::from_lowpass("haar", {s, s});
    }
    case 2: {
      const double r3 = std::sqrt(3.0);
      const double d = 4.0 * std::sqrt(2.0);
      return FilterBank::from_lowpass("db2", {(1 + r3) / d, (3 + r3) / d, (3 - r3) / d, (1 - r3) / d});
    }
    case 4:
      // Daubechies D8 scaling filter (4 vanishing moments).
      return FilterBank::from_lowpass("db4", {0.23037781330889650, 0.71484657055291565, 0.63088076792985891,
                                              -0.027983769416859854, -0.18703481171909308, 0.030841381835560764,
                                              0.032883011666885200, -0.010597401785069032});
    default:
      throw ConfigError("unsupported Daubechies order " + std::to_string(order) + " (supported: 1, 2, 4)");
  }
}

FilterBank filter_bank_by_name(const std::string& name) {
  if (name == "haar" || name == "db1") return daubechies_taps(1);
  if (name == "db2") return daubechies_taps(2);
  if (name == "db4") return daubechies_taps(4);
  throw ConfigError("unknown wavelet '" + name + "' (expected haar, db1, db2 or db4)");
}

std::size_t WaveletDecomposition::coefficient_count() const noexcept {
  std::size_t n = ca.size();
  for (const auto& d : details) n += d.chd.size() + d.cvd.size() + d.cdd.size();
  return n;
}

Subbands dwt2_level(const Image& img, const FilterBank& bank) {
  require_nonempty(img, "dwt2_level");
  validate_bank(bank);
  if (img.rows() % 2 != 0 || img.cols() % 2 != 0) {
    throw DimensionError("dwt2_level: dimensions must be even, got " + std::to_string(img.rows()) + "x" +
                         std::to_string(img.cols()));
  }
  const std::size_t hr = img.rows() / 2;
  const std::size_t hc = img.cols() / 2;
  Image lo(img.rows(), hc), hi(img.rows(), hc);
  analyze_rows(img, bank, lo, hi);

  Subbands out{Image(hr, hc), Image(hr, hc), Image(hr, hc), Image(hr, hc)};
  analyze_cols(lo, bank, out.ca, out.chd);
  analyze_cols(hi, bank, out.cvd, out.cdd);
  return out;
}

Image idwt2_level(const Subbands& sub, const FilterBank& bank) {
  validate_bank(bank);
  require_nonempty(sub.ca, "idwt2_level");
  require_same_shape(sub.ca, sub.chd, "idwt2_level");
  require_same_shape(sub.ca, sub.cvd, "idwt2_level");
  require_same_shape(sub.ca, sub.cdd, "idwt2_level");
  const std::size_t rows = sub.ca.rows() * 2;
  const std::size_t cols = sub.ca.cols() * 2;
  Image lo(rows, sub.ca.cols()), hi(rows, sub.ca.cols());
  synthesize_cols(sub.ca, sub.chd, bank, lo);
  synthesize_cols(sub.cvd, sub.cdd, bank, hi);
  Image out(rows, cols);
  synthesize_rows(lo, hi, bank, out);
  return out;
}

WaveletDecomposition dwt2(const Image& img, const FilterBank& bank, std::size_t levels) {
  require_nonempty(img, "dwt2");
  if (levels == 0) throw ConfigError("dwt2: levels must be positive");
  const std::size_t min_dim = std::min(img.rows(), img.cols());
  if (levels >= 64 || (std::size_t{1} << levels) > min_dim) {
    throw ConfigError("dwt2: " + std::to_string(levels) + " levels exceed log2 of the smallest dimension (" +
                      std::to_string(min_dim) + ")");
  }
  const std::size_t block = std::size_t{1} << levels;
  const std::size_t pr = (img.rows() + block - 1) / block * block;
  const std::size_t pc = (img.cols() + block - 1) / block * block;

  WaveletDecomposition dec;
  dec.rows = img.rows();
  dec.cols = img.cols();
  dec.bank = bank;
  Image current = pad_replicate(img, pr, pc);
  for (std::size_t i = 0; i < levels; ++i) {
    Subbands sub = dwt2_level(current, bank);
    dec.details.push_back({std::move(sub.chd), std::move(sub.cvd), std::move(sub.cdd)});
    current = std::move(sub.ca);
  }
  dec.ca = std::move(current);
  return dec;
}

Image idwt2(const WaveletDecomposition& dec) {
  if (dec.details.empty()) throw ConfigError("idwt2: decomposition has no levels");
  Image current = dec.ca;
  for (std::size_t i = dec.levels(); i-- > 0;) {
    const DetailLevel& d = dec.details[i];
    current = idwt2_level(Subbands{std::move(current), d.chd, d.cvd, d.cdd}, dec.bank);
  }
  return crop(current, dec.rows, dec.cols);
}

std::vector<double> serialize_spatial_order(const WaveletDecomposition& dec) {
  std::vector<double> out;
  out.reserve(dec.coefficient_count());
  for (std::size_t r = 0; r < dec.ca.rows(); ++r) {
    for (std::size_t c = 0; c < dec.ca.cols(); ++c) {
      out.push_back(dec.ca(r, c));
      emit_tree(dec, dec.levels(), r, c, out);
    }
  }
  return out;
}

WaveletDecomposition deserialize_spatial_order(std::span<const double> coeffs, const WaveletDecomposition& shape) {
  if (coeffs.size() != shape.coefficient_count()) {
    throw DimensionError("deserialize_spatial_order: expected " + std::to_string(shape.coefficient_count()) +
                         " coefficients, got " + std::to_string(coeffs.size()));
  }
  WaveletDecomposition dec = shape;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < dec.ca.rows(); ++r) {
    for (std::size_t c = 0; c < dec.ca.cols(); ++c) {
      dec.ca(r, c) = coeffs[pos++];
      absorb_tree(dec, dec.levels(), r, c, coeffs, pos);
    }
  }
  return dec;
}

}  // namespace despeck
