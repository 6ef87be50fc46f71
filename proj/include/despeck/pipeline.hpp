#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "despeck/fuzzy.hpp"
#include "despeck/image.hpp"
#include "despeck/speckle.hpp"
#include "despeck/threshold.hpp"
#include "despeck/wavelet.hpp"

namespace despeck {

enum class ShrinkRule { hard, soft };
enum class SeedSubband { chd, cvd, cdd, pooled };

ShrinkRule shrink_rule_from_string(const std::string& s);
SeedSubband seed_subband_from_string(const std::string& s);
std::string to_string(ShrinkRule r);
std::string to_string(SeedSubband s);

/// Homomorphic single-level wavelet shrinkage settings.
struct PipelineConfig {
  std::string wavelet = "haar";
  std::size_t levels = 1;
  ShrinkRule shrink = ShrinkRule::hard;
  BiasConfig bias{};
  SeedSubband seed_subband = SeedSubband::cdd;

  /// Throws ConfigError on an unknown wavelet, a level count other than one,
  /// or an invalid bias.
  void validate() const;
};

/// +BIAS, ln, one DWT level, shrink the three detail bands at lambda (the
/// approximation is untouched), inverse DWT, exp, -BIAS. Odd dimensions are
/// edge-padded for the transform and cropped after. Output is clamped at 0.
Image shrink_once(const Image& img, double lambda, const PipelineConfig& cfg = {});

/// Robust noise estimate on the log-domain detail band(s) chosen by
/// cfg.seed_subband, and the universal threshold over that band's size.
ThresholdEstimate initial_threshold(const Image& img, const PipelineConfig& cfg = {});

struct CalibrationStep {
  std::size_t iter = 0;   // 1-based
  double e = 0.0;         // signed peak error, gray levels
  double de = 0.0;        // e - previous e, gray levels
  double dlambda = 0.0;   // threshold increment applied after this step
  double lambda = 0.0;    // threshold that produced this step's estimate
  double me = 0.0;        // |e| normalized by the clean peak
};

struct CalibrationResult {
  double lambda_star = 0.0;
  double lambda0 = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double best_me = 0.0;
  std::vector<CalibrationStep> trace;
};

struct CalibrationOptions {
  double epsilon = 0.02;  // on |e| / max(clean)
  std::size_t max_iter = 100;
};

/// Feedback calibration of the shrinkage threshold against a clean reference.
///
/// Speckles `clean` once with `spec`, seeds lambda with initial_threshold, then
/// iterates: despeckle at lambda, scalarize clean - despeckled, let the fuzzy
/// PI controller propose a step, lambda <- max(lambda + step, 0). Stops once
/// the normalized peak error is at most epsilon or after max_iter steps and
/// returns the lambda with the smallest observed error.
CalibrationResult calibrate_fuzzythresh(const Image& clean, const SpeckleSpec& spec, const PipelineConfig& cfg = {},
                                        const fuzzy::ControllerConfig& ctl = {}, const CalibrationOptions& opts = {});

/// Same loop on an already speckled image.
CalibrationResult calibrate_on_pair(const Image& clean, const Image& speckled, const PipelineConfig& cfg = {},
                                    const fuzzy::ControllerConfig& ctl = {}, const CalibrationOptions& opts = {});

/// Applies a calibrated threshold to a new image; no controller involved.
Image despeckle_fuzzythresh(const Image& noisy, double lambda_star, const PipelineConfig& cfg = {});

/// "iter,e,de,dlambda,lambda,me" followed by one row per step.
void write_trace_csv(std::ostream& out, const CalibrationResult& result);

// Baselines ----------------------------------------------------------------

/// ln(x + bias), kernel x kernel median with edge replication, exp - bias.
Image median_filter_homomorphic(const Image& noisy, std::size_t kernel, const BiasConfig& bias = {});

/// Lee filter in the intensity domain: with window mean m and variance v,
/// k = max(v - m^2 * noise_var_ratio, 0) / v (0 when v == 0) and
/// out = m + k (x - m). Windows are edge-replicated.
Image lee_filter(const Image& noisy, std::size_t kernel, double noise_var_ratio);

/// Throws ConfigError unless kernel is odd and at least 3, and DimensionError
/// if it exceeds either image dimension.
void validate_kernel(const Image& img, std::size_t kernel);

}  // namespace despeck
