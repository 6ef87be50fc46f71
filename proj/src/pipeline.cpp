#include "despeck/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "despeck/error.hpp"

namespace despeck {

namespace {

Image shrink_band(const Image& band, double lambda, ShrinkRule rule) {
  return rule == ShrinkRule::hard ? hard_threshold(band, lambda) : soft_threshold(band, lambda);
}

Image pad_even(const Image& img) { return pad_replicate(img, img.rows() + img.rows() % 2, img.cols() + img.cols() % 2); }

Subbands log_subbands(const Image& img, const PipelineConfig& cfg) {
  return dwt2_level(pad_even(log_domain(img, cfg.bias)), filter_bank_by_name(cfg.wavelet));
}

double peak_magnitude(const Image& img) {
  double peak = 0.0;
  for (double v : img.pixels()) peak = std::max(peak, std::abs(v));
  return peak;
}

}  // namespace

ShrinkRule shrink_rule_from_string(const std::string& s) {
  if (s == "hard") return ShrinkRule::hard;
  if (s == "soft") return ShrinkRule::soft;
  throw ConfigError("unknown shrink rule '" + s + "' (expected hard or soft)");
}

SeedSubband seed_subband_from_string(const std::string& s) {
  if (s == "chd") return SeedSubband::chd;
  if (s == "cvd") return SeedSubband::cvd;
  if (s == "cdd") return SeedSubband::cdd;
  if (s == "pooled") return SeedSubband::pooled;
  throw ConfigError("unknown seed subband '" + s + "' (expected chd, cvd, cdd or pooled)");
}

std::string to_string(ShrinkRule r) { return r == ShrinkRule::hard ? "hard" : "soft"; }

std::string to_string(SeedSubband s) {
  switch (s) {
    case SeedSubband::chd: return "chd";
    case SeedSubband::cvd: return "cvd";
    case SeedSubband::cdd: return "cdd";
    case SeedSubband::pooled: return "pooled";
  }
  return "?";
}

void PipelineConfig::validate() const {
  (void)filter_bank_by_name(wavelet);
  if (levels != 1) throw ConfigError("pipeline: shrinkage is applied to the first decomposition level only");
  bias.validate();
}

Image shrink_once(const Image& img, double lambda, const PipelineConfig& cfg) {
  cfg.validate();
  require_nonempty(img, "shrink_once");
  if (!(lambda >= 0.0)) throw ConfigError("shrink_once: threshold must be nonnegative");
  const FilterBank bank = filter_bank_by_name(cfg.wavelet);

  Subbands sub = dwt2_level(pad_even(log_domain(img, cfg.bias)), bank);
  sub.chd = shrink_band(sub.chd, lambda, cfg.shrink);
  sub.cvd = shrink_band(sub.cvd, lambda, cfg.shrink);
  sub.cdd = shrink_band(sub.cdd, lambda, cfg.shrink);
  Image out = exp_domain(crop(idwt2_level(sub, bank), img.rows(), img.cols()), cfg.bias);
  for (double& v : out.pixels()) v = std::max(v, 0.0);
  return out;
}

ThresholdEstimate initial_threshold(const Image& img, const PipelineConfig& cfg) {
  cfg.validate();
  require_nonempty(img, "initial_threshold");
  const Subbands sub = log_subbands(img, cfg);
  std::vector<double> coeffs;
  auto take = [&coeffs](const Image& band) { coeffs.insert(coeffs.end(), band.pixels().begin(), band.pixels().end()); };
  switch (cfg.seed_subband) {
    case SeedSubband::chd: take(sub.chd); break;
    case SeedSubband::cvd: take(sub.cvd); break;
    case SeedSubband::cdd: take(sub.cdd); break;
    case SeedSubband::pooled:
      take(sub.chd);
      take(sub.cvd);
      take(sub.cdd);
      break;
  }
  if (coeffs.size() < 2) throw DimensionError("initial_threshold: image too small for a noise estimate");
  return universal_threshold(mad_sigma(coeffs), coeffs.size());
}

CalibrationResult calibrate_fuzzythresh(const Image& clean, const SpeckleSpec& spec, const PipelineConfig& cfg,
                                        const fuzzy::ControllerConfig& ctl, const CalibrationOptions& opts) {
  require_nonempty(clean, "calibrate_fuzzythresh");
  require_nonnegative(clean, "calibrate_fuzzythresh");
  return calibrate_on_pair(clean, apply_speckle(clean, spec), cfg, ctl, opts);
}

CalibrationResult calibrate_on_pair(const Image& clean, const Image& speckled, const PipelineConfig& cfg,
                                    const fuzzy::ControllerConfig& ctl, const CalibrationOptions& opts) {
  cfg.validate();
  require_same_shape(clean, speckled, "calibrate_on_pair");
  require_nonnegative(clean, "calibrate_on_pair");
  if (!(opts.epsilon > 0.0)) throw ConfigError("calibrate: epsilon must be positive");
  if (opts.max_iter == 0) throw ConfigError("calibrate: max_iter must be positive");

  const double peak = peak_magnitude(clean);
  if (!(peak > 0.0)) throw DomainError("calibrate: clean reference is all zero");
  const ThresholdEstimate seed = initial_threshold(speckled, cfg);
  // A noise-free speckled input yields lambda0 == 0; one log-domain unit
  // then sets the controller's step size.
  const fuzzy::ControllerConfig gains = ctl.resolved(peak, seed.lambda > 0.0 ? seed.lambda : 1.0);

  CalibrationResult res;
  res.lambda0 = seed.lambda;
  res.lambda_star = seed.lambda;
  res.best_me = std::numeric_limits<double>::infinity();

  double lambda = seed.lambda;
  double eh = 0.0;
  for (std::size_t iter = 1; iter <= opts.max_iter; ++iter) {
    const Image despeckled = shrink_once(speckled, lambda, cfg);
    const fuzzy::ScalarError err = fuzzy::scalarize(subtract(clean, despeckled), eh);
    const double me = std::abs(err.e) / peak;
    const double dlambda = fuzzy::control_step(err, gains);

    res.trace.push_back({iter, err.e, err.de, dlambda, lambda, me});
    res.iterations = iter;
    if (me < res.best_me) {
      res.best_me = me;
      res.lambda_star = lambda;
    }
    if (me <= opts.epsilon) {
      res.converged = true;
      break;
    }
    lambda = std::max(lambda + dlambda, 0.0);
    eh = err.e;
  }
  return res;
}

Image despeckle_fuzzythresh(const Image& noisy, double lambda_star, const PipelineConfig& cfg) {
  return shrink_once(noisy, lambda_star, cfg);
}

void write_trace_csv(std::ostream& out, const CalibrationResult& result) {
  out << "iter,e,de,dlambda,lambda,me\n";
  for (const auto& s : result.trace) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.iter, s.e, s.de, s.dlambda, s.lambda, s.me);
  }
}

}  // namespace despeck
