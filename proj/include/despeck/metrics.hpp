#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "despeck/image.hpp"

namespace despeck {

struct MeanVariance {
  double nmv = 0.0;  // mean
  double nv = 0.0;   // population variance
  double nsd = 0.0;  // sqrt(nv)
};

/// Population mean, variance and standard deviation of all pixels.
MeanVariance nmv_nv_nsd(const Image& img);

/// Mean squared difference. Symmetric in its arguments.
double msd(const Image& reference, const Image& candidate);

struct EnlResult {
  double enl = 0.0;             // mean of NMV^2 / NV over tiles with NV > 0
  std::size_t tiles = 0;        // tiles that contributed
  std::size_t flat_tiles = 0;   // full tiles skipped because NV == 0
};

/// Equivalent number of looks averaged over non-overlapping block x block
/// tiles. Partial tiles at the right and bottom edges are discarded. Throws
/// DimensionError if no full tile fits and DomainError if every tile is flat.
EnlResult enl_blocked(const Image& img, std::size_t block);

/// Mean over pixels of (candidate - NMV) / NSD, where NMV and NSD come from
/// stats_source. Throws DomainError when stats_source has zero variance.
double deflection_ratio(const Image& candidate, const Image& stats_source);

struct EdgeMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<bool> mask;  // row-major
  std::size_t count = 0;

  bool operator()(std::size_t r, std::size_t c) const { return mask[r * cols + c]; }
  static EdgeMap from_mask(std::size_t rows, std::size_t cols, std::vector<bool> mask);
};

/// Sobel gradient magnitude with edge-replicated borders; a pixel is an edge
/// when its magnitude is at least tau times the image maximum. A constant
/// image has no edges.
EdgeMap detect_edges(const Image& img, double tau);

/// Squared Euclidean distance from every pixel to the nearest set pixel of
/// `map`, computed by the separable lower-envelope transform.
std::vector<double> squared_distance_transform(const EdgeMap& map);

/// Pratt's figure of merit, in [0, 1]:
///   (1 / max(N_detected, N_ideal)) * sum_i 1 / (1 + alpha * d_i^2)
/// with d_i the distance from detected pixel i to the nearest ideal pixel.
/// Brute-force distances are used when the ideal map has at most 4096 pixels,
/// the distance transform otherwise.
double pratt_fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha = 1.0 / 9.0);

struct MetricsConfig {
  std::size_t block = 25;
  double tau = 0.2;
  double alpha = 1.0 / 9.0;
};

struct MetricsReport {
  double nmv = 0.0;
  double nv = 0.0;
  double nsd = 0.0;
  double msd = 0.0;
  double enl = 0.0;
  double dr = 0.0;
  double fom = 0.0;
  double clean_mse = 0.0;  // despeckled vs clean; not part of the table row
};

/// Statistics of the despeckled image: NMV/NV/NSD and ENL on it, MSD against
/// the noisy input, DR with the noisy image as statistics source, FOM of its
/// edges against the clean image's edges. clean_mse is the MSD of the
/// despeckled image against the clean one.
MetricsReport full_report(const Image& clean, const Image& noisy, const Image& despeckled,
                          const MetricsConfig& cfg = {});

/// Column order used by every report writer.
inline constexpr const char* kReportColumns[] = {"NV", "MSD", "NMV", "NSD", "ENL", "DR", "FOM"};

std::vector<double> report_values(const MetricsReport& r);
std::string report_csv_header();
std::string report_csv_row(const MetricsReport& r);
/// Fixed-width table with a header line and one row labelled `name`.
void write_report_table(std::ostream& out, const std::string& name, const MetricsReport& r);

}  // namespace despeck
