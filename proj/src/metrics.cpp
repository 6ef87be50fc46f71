#include "despeck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>

#include "despeck/error.hpp"

namespace despeck {

namespace {

// Welford accumulation over a span.
MeanVariance welford(std::span<const double> px) {
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : px) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  const double var = std::max(m2 / static_cast<double>(n), 0.0);
  return {mean, var, std::sqrt(var)};
}

constexpr std::size_t kBruteForceLimit = 4096;

// Felzenszwalb-Huttenlocher 1-D squared distance transform of f (in place).
void dt_1d(std::vector<double>& f, std::vector<double>& d, std::vector<std::size_t>& v, std::vector<double>& z) {
  const std::size_t n = f.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t q = 0; q < n; ++q) {
    if (f[q] < inf) {
      first = q;
      break;
    }
  }
  if (first == n) return;  // no sites: leave at infinity
  v[0] = first;
  z[0] = -inf;
  z[1] = inf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (f[q] == inf) continue;
    const double fq = f[q] + static_cast<double>(q * q);
    double s;
    while (true) {
      const auto p = static_cast<double>(v[k]);
      s = (fq - (f[v[k]] + p * p)) / (2.0 * (static_cast<double>(q) - p));
      if (s <= z[k] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere.
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
    d[q] = diff * diff + f[v[k]];
  }
  f.swap(d);
}

}  // namespace

MeanVariance nmv_nv_nsd(const Image& img) {
  require_nonempty(img, "nmv_nv_nsd");
  return welford(img.pixels());
}

double msd(const Image& reference, const Image& candidate) {
  require_nonempty(reference, "msd");
  require_same_shape(reference, candidate, "msd");
  auto a = reference.pixels();
  auto b = candidate.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

EnlResult enl_blocked(const Image& img, std::size_t block) {
  if (block < 2) throw ConfigError("enl_blocked: block must be at least 2");
  require_nonempty(img, "enl_blocked");
  if (img.rows() < block || img.cols() < block) {
    throw DimensionError("enl_blocked: image smaller than one " + std::to_string(block) + "x" +
                         std::to_string(block) + " tile");
  }
  const std::size_t tr = img.rows() / block;
  const std::size_t tc = img.cols() / block;
  const auto n_tiles = static_cast<std::int64_t>(tr * tc);
  std::vector<double> tile_enl(tr * tc, -1.0);

#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n_tiles; ++t) {
    const std::size_t r0 = static_cast<std::size_t>(t) / tc * block;
    const std::size_t c0 = static_cast<std::size_t>(t) % tc * block;
    double sum = 0.0;
    for (std::size_t r = r0; r < r0 + block; ++r)
      for (double v : img.row(r).subspan(c0, block)) sum += v;
    const double mean = sum / static_cast<double>(block * block);
    double ss = 0.0;
    for (std::size_t r = r0; r < r0 + block; ++r)
      for (double v : img.row(r).subspan(c0, block)) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(block * block);
    if (var > 0.0) tile_enl[static_cast<std::size_t>(t)] = mean * mean / var;
  }

  EnlResult res;
  double total = 0.0;
  for (double v : tile_enl) {
    if (v < 0.0) {
      ++res.flat_tiles;
    } else {
      total += v;
      ++res.tiles;
    }
  }
  if (res.tiles == 0) throw DomainError("enl_blocked: every tile has zero variance");
  res.enl = total / static_cast<double>(res.tiles);
  return res;
}

double deflection_ratio(const Image& candidate, const Image& stats_source) {
  require_nonempty(candidate, "deflection_ratio");
  require_same_shape(candidate, stats_source, "deflection_ratio");
  const MeanVariance s = nmv_nv_nsd(stats_source);
  if (!(s.nsd > 0.0)) throw DomainError("deflection_ratio: statistics source has zero deviation");
  double sum = 0.0;
  for (double v : candidate.pixels()) sum += (v - s.nmv) / s.nsd;
  return sum / static_cast<double>(candidate.size());
}

EdgeMap EdgeMap::from_mask(std::size_t rows, std::size_t cols, std::vector<bool> mask) {
  if (mask.size() != rows * cols) throw DimensionError("EdgeMap: mask size does not match dimensions");
  const auto count = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
  return EdgeMap{rows, cols, std::move(mask), count};
}

EdgeMap detect_edges(const Image& img, double tau) {
  require_nonempty(img, "detect_edges");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("detect_edges: tau must lie in (0, 1)");
  const std::size_t rows = img.rows(), cols = img.cols();
  std::vector<double> mag(rows * cols);
  const auto n_rows = static_cast<std::int64_t>(rows);

#pragma omp parallel for schedule(static)
  for (std::int64_t ri = 0; ri < n_rows; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    const std::size_t up = r == 0 ? 0 : r - 1;
    const std::size_t dn = std::min(r + 1, rows - 1);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t lf = c == 0 ? 0 : c - 1;
      const std::size_t rt = std::min(c + 1, cols - 1);
      const double gx = (img(up, rt) + 2.0 * img(r, rt) + img(dn, rt)) - (img(up, lf) + 2.0 * img(r, lf) + img(dn, lf));
      const double gy = (img(dn, lf) + 2.0 * img(dn, c) + img(dn, rt)) - (img(up, lf) + 2.0 * img(up, c) + img(up, rt));
      mag[r * cols + c] = std::hypot(gx, gy);
    }
  }

  const double peak = *std::max_element(mag.begin(), mag.end());
  std::vector<bool> mask(rows * cols, false);
  if (peak > 0.0) {
    const double cut = tau * peak;
    for (std::size_t i = 0; i < mag.size(); ++i) mask[i] = mag[i] >= cut;
  }
  return EdgeMap::from_mask(rows, cols, std::move(mask));
}

std::vector<double> squared_distance_transform(const EdgeMap& map) {
  const std::size_t rows = map.rows, cols = map.cols;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(rows * cols);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = map.mask[i] ? 0.0 : inf;

  const std::size_t longest = std::max(rows, cols);
  // Columns, then rows.
#pragma omp parallel
  {
    std::vector<double> f, d(longest), z(longest + 1);
    std::vector<std::size_t> v(longest);
#pragma omp for schedule(static)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(cols); ++ci) {
      const auto c = static_cast<std::size_t>(ci);
      f.resize(rows);
      d.resize(rows);
      for (std::size_t r = 0; r < rows; ++r) f[r] = grid[r * cols + c];
      dt_1d(f, d, v, z);
      for (std::size_t r = 0; r < rows; ++r) grid[r * cols + c] = f[r];
    }
#pragma omp for schedule(static)
    for (std::int64_t ri = 0; ri < static_cast<std::int64_t>(rows); ++ri) {
      const auto r = static_cast<std::size_t>(ri);
      f.assign(grid.begin() + static_cast<std::ptrdiff_t>(r * cols),
               grid.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
      d.resize(cols);
      dt_1d(f, d, v, z);
      std::copy(f.begin(), f.end(), grid.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
  }
  return grid;
}

double pratt_fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha) {
  if (detected.rows != ideal.rows || detected.cols != ideal.cols) {
    throw DimensionError("pratt_fom: edge maps differ in size");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("pratt_fom: alpha must be finite and nonnegative");
  if (ideal.count == 0) {
    throw DomainError(detected.count == 0 ? "pratt_fom: both edge maps are empty" : "pratt_fom: ideal edge map is empty");
  }
  if (detected.count == 0) return 0.0;

  const std::size_t cols = ideal.cols;
  double sum = 0.0;
  if (ideal.count <= kBruteForceLimit) {
    std::vector<std::pair<double, double>> sites;
    sites.reserve(ideal.count);
    for (std::size_t i = 0; i < ideal.mask.size(); ++i)
      if (ideal.mask[i]) sites.emplace_back(static_cast<double>(i / cols), static_cast<double>(i % cols));
    for (std::size_t i = 0; i < detected.mask.size(); ++i) {
      if (!detected.mask[i]) continue;
      const auto r = static_cast<double>(i / cols), c = static_cast<double>(i % cols);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [sr, sc] : sites) best = std::min(best, (r - sr) * (r - sr) + (c - sc) * (c - sc));
      sum += 1.0 / (1.0 + alpha * best);
    }
  } else {
    const auto d2 = squared_distance_transform(ideal);
    for (std::size_t i = 0; i < detected.mask.size(); ++i)
      if (detected.mask[i]) sum += 1.0 / (1.0 + alpha * d2[i]);
  }
  return sum / static_cast<double>(std::max(detected.count, ideal.count));
}

MetricsReport full_report(const Image& clean, const Image& noisy, const Image& despeckled, const MetricsConfig& cfg) {
  require_same_shape(clean, noisy, "full_report");
  require_same_shape(clean, despeckled, "full_report");
  MetricsReport r;
  const MeanVariance s = nmv_nv_nsd(despeckled);
  r.nmv = s.nmv;
  r.nv = s.nv;
  r.nsd = s.nsd;
  r.msd = msd(noisy, despeckled);
  r.enl = enl_blocked(despeckled, cfg.block).enl;
  r.dr = deflection_ratio(despeckled, noisy);
  r.fom = pratt_fom(detect_edges(despeckled, cfg.tau), detect_edges(clean, cfg.tau), cfg.alpha);
  r.clean_mse = msd(clean, despeckled);
  return r;
}

std::vector<double> report_values(const MetricsReport& r) { return {r.nv, r.msd, r.nmv, r.nsd, r.enl, r.dr, r.fom}; }

std::string report_csv_header() { return "NV,MSD,NMV,NSD,ENL,DR,FOM"; }

std::string report_csv_row(const MetricsReport& r) {
  const auto v = report_values(r);
  return fmt::format("{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}", v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
}

void write_report_table(std::ostream& out, const std::string& name, const MetricsReport& r) {
  out << fmt::format("{:<16}", "Filter");
  for (const char* col : kReportColumns) out << fmt::format("{:>14}", col);
  out << '\n' << fmt::format("{:<16}", name);
  for (double v : report_values(r)) out << fmt::format("{:>14.4f}", v);
  out << '\n';
}

}  // namespace despeck
