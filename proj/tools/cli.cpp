#include "despeck/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <fmt/format.h>

#include "despeck/error.hpp"
#include "despeck/fuzzy.hpp"
#include "despeck/image_io.hpp"
#include "despeck/metrics.hpp"
#include "despeck/pipeline.hpp"
#include "despeck/speckle.hpp"

namespace despeck::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kWavelets{"haar", "db1", "db2", "db4"};
const std::vector<std::string> kShrinks{"hard", "soft"};
const std::vector<std::string> kKinds{"rayleigh", "exponential", "gamma"};
const std::vector<std::string> kSubbands{"chd", "cvd", "cdd", "pooled"};
const std::vector<std::string> kMaxvals{"auto", "255", "65535"};

struct Options {
  // paths
  std::string in, out, clean, noisy, despeckled, trace_out, csv_out;
  // pipeline
  std::string wavelet = "haar";
  std::string shrink = "hard";
  std::string seed_subband = "cdd";
  double bias = 1.0;
  double lambda = 0.0;
  // speckle
  std::string kind = "gamma";
  unsigned looks = 3;
  std::uint64_t seed = 42;
  std::string maxval = "auto";
  // calibration
  double epsilon = 0.02;
  std::size_t max_iter = 100;
  // baselines
  std::string filter = "median";
  std::size_t kernel = 3;
  double noise_var = -1.0;
  // metrics
  std::size_t block = 25;
  double tau = 0.2;
  double alpha = 1.0 / 9.0;
  std::string name = "despeckled";
  // surface
  std::size_t grid_n = 21;
};

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig cfg;
  cfg.wavelet = o.wavelet;
  cfg.shrink = shrink_rule_from_string(o.shrink);
  cfg.seed_subband = seed_subband_from_string(o.seed_subband);
  cfg.bias.bias = o.bias;
  cfg.validate();
  return cfg;
}

SpeckleSpec speckle_spec(const Options& o) {
  SpeckleSpec spec{speckle_kind_from_string(o.kind), o.looks, o.seed};
  spec.validate();
  return spec;
}

unsigned output_maxval(const Options& o, unsigned input_maxval) {
  if (o.maxval == "255") return 255;
  if (o.maxval == "65535") return 65535;
  return input_maxval <= 255 ? 255 : 65535;
}

void add_pipeline_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--wavelet", o.wavelet, "Filter bank")->check(CLI::IsMember(kWavelets))->capture_default_str();
  cmd->add_option("--shrink", o.shrink, "Thresholding rule")->check(CLI::IsMember(kShrinks))->capture_default_str();
  cmd->add_option("--bias", o.bias, "Offset added before the logarithm")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_speckle_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--kind", o.kind, "Speckle distribution")->check(CLI::IsMember(kKinds))->capture_default_str();
  cmd->add_option("--looks", o.looks, "Number of looks (gamma)")->check(CLI::Range(1u, 1000000u))->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
}

void add_maxval_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--maxval", o.maxval, "Output PGM maxval (auto follows the input)")
      ->check(CLI::IsMember(kMaxvals))
      ->capture_default_str();
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

int cmd_speckle(const Options& o, std::ostream& out, std::ostream& err) {
  const SpeckleSpec spec = speckle_spec(o);
  const PgmImage src = decode_pgm(read_file(o.in));
  const Image speckled = apply_speckle(src.image, spec);
  const unsigned maxval = output_maxval(o, src.maxval);
  write_file(o.out, write_pgm(speckled, maxval));
  emit(out, json{{"command", "speckle"},
                 {"kind", to_string(spec.kind)},
                 {"looks", spec.looks},
                 {"seed", spec.seed},
                 {"rows", speckled.rows()},
                 {"cols", speckled.cols()},
                 {"maxval", maxval},
                 {"out", o.out}});
  err << "speckle: wrote " << o.out << '\n';
  return 0;
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = pipeline_config(o);
  const SpeckleSpec spec = speckle_spec(o);
  const Image clean = read_pgm(read_file(o.clean));
  const CalibrationResult res =
      calibrate_fuzzythresh(clean, spec, cfg, fuzzy::ControllerConfig{}, CalibrationOptions{o.epsilon, o.max_iter});
  if (!o.trace_out.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, res);
    const std::string text = csv.str();
    write_file(o.trace_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  emit(out, json{{"command", "calibrate"},
                 {"lambda_star", res.lambda_star},
                 {"lambda0", res.lambda0},
                 {"iterations", res.iterations},
                 {"converged", res.converged},
                 {"best_me", res.best_me}});
  err << fmt::format("calibrate: lambda0={:.6g} lambda*={:.6g} after {} iterations ({})\n", res.lambda0,
                     res.lambda_star, res.iterations, res.converged ? "converged" : "best observed");
  return 0;
}

int cmd_despeckle(const Options& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = pipeline_config(o);
  if (!(o.lambda >= 0.0)) throw ConfigError("--lambda must be nonnegative");
  const PgmImage src = decode_pgm(read_file(o.in));
  const Image result = despeckle_fuzzythresh(src.image, o.lambda, cfg);
  write_file(o.out, write_pgm(result, output_maxval(o, src.maxval)));
  emit(out, json{{"command", "despeckle"}, {"lambda", o.lambda}, {"wavelet", cfg.wavelet},
                 {"shrink", to_string(cfg.shrink)}, {"out", o.out}});
  err << "despeckle: wrote " << o.out << '\n';
  return 0;
}

int cmd_baseline(const Options& o, std::ostream& out, std::ostream& err) {
  const PgmImage src = decode_pgm(read_file(o.in));
  Image result;
  json info{{"command", "baseline"}, {"filter", o.filter}, {"kernel", o.kernel}};
  if (o.filter == "median") {
    BiasConfig bias{o.bias};
    bias.validate();
    result = median_filter_homomorphic(src.image, o.kernel, bias);
  } else {
    const double ratio = o.noise_var >= 0.0 ? o.noise_var : speckle_spec(o).variance();
    result = lee_filter(src.image, o.kernel, ratio);
    info["noise_var"] = ratio;
  }
  write_file(o.out, write_pgm(result, output_maxval(o, src.maxval)));
  info["out"] = o.out;
  emit(out, info);
  err << "baseline: wrote " << o.out << '\n';
  return 0;
}

int cmd_metrics(const Options& o, std::ostream& out, std::ostream& err) {
  const Image clean = read_pgm(read_file(o.clean));
  const Image noisy = read_pgm(read_file(o.noisy));
  const Image despeckled = read_pgm(read_file(o.despeckled));
  const MetricsReport r = full_report(clean, noisy, despeckled, MetricsConfig{o.block, o.tau, o.alpha});
  json j{{"command", "metrics"}, {"name", o.name}};
  const auto values = report_values(r);
  for (std::size_t i = 0; i < values.size(); ++i) j[kReportColumns[i]] = values[i];
  j["clean_MSE"] = r.clean_mse;
  emit(out, j);
  if (!o.csv_out.empty()) {
    const std::string text = report_csv_header() + "\n" + report_csv_row(r) + "\n";
    write_file(o.csv_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  write_report_table(err, o.name, r);
  return 0;
}

int cmd_surface(const Options& o, std::ostream& out, std::ostream& err) {
  const fuzzy::Surface s = fuzzy::output_surface(o.grid_n);
  std::ostringstream csv;
  fuzzy::write_surface_csv(csv, s);
  const std::string text = csv.str();
  write_file(o.out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  emit(out, json{{"command", "surface"}, {"grid_n", o.grid_n}, {"out", o.out}});
  err << "surface: wrote " << o.out << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Speckle reduction with fuzzy-calibrated wavelet thresholding", "despeck"};
  app.require_subcommand(1);

  auto* speckle = app.add_subcommand("speckle", "Apply synthetic multiplicative speckle to a PGM image");
  speckle->add_option("--in", o.in, "Input PGM")->required();
  speckle->add_option("--out", o.out, "Output PGM")->required();
  add_speckle_flags(speckle, o);
  add_maxval_flag(speckle, o);

  auto* calibrate = app.add_subcommand("calibrate", "Calibrate the shrinkage threshold against a clean image");
  calibrate->add_option("--clean", o.clean, "Clean reference PGM")->required();
  calibrate->add_option("--trace-out", o.trace_out, "Write the iteration trace CSV here");
  calibrate->add_option("--epsilon", o.epsilon, "Stop when |e| / max(clean) <= epsilon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  calibrate->add_option("--max-iter", o.max_iter, "Iteration limit")->check(CLI::PositiveNumber)->capture_default_str();
  calibrate->add_option("--seed-subband", o.seed_subband, "Band(s) for the initial noise estimate")
      ->check(CLI::IsMember(kSubbands))
      ->capture_default_str();
  add_speckle_flags(calibrate, o);
  add_pipeline_flags(calibrate, o);

  auto* despeckle = app.add_subcommand("despeckle", "Apply a calibrated threshold to a noisy PGM");
  despeckle->add_option("--in", o.in, "Noisy PGM")->required();
  despeckle->add_option("--out", o.out, "Output PGM")->required();
  despeckle->add_option("--lambda", o.lambda, "Threshold (log domain)")->required();
  add_pipeline_flags(despeckle, o);
  add_maxval_flag(despeckle, o);

  auto* baseline = app.add_subcommand("baseline", "Run a baseline statistical filter");
  baseline->add_option("--filter", o.filter, "median (homomorphic) or lee (intensity domain)")
      ->check(CLI::IsMember({"median", "lee"}))
      ->capture_default_str();
  baseline->add_option("--in", o.in, "Noisy PGM")->required();
  baseline->add_option("--out", o.out, "Output PGM")->required();
  baseline->add_option("--kernel", o.kernel, "Odd window size >= 3")->capture_default_str();
  baseline->add_option("--bias", o.bias, "Offset added before the logarithm (median)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  baseline->add_option("--noise-var", o.noise_var,
                       "Speckle variance for the Lee filter (default: derived from --kind/--looks)");
  baseline->add_option("--kind", o.kind, "Speckle distribution (Lee noise variance)")
      ->check(CLI::IsMember(kKinds))
      ->capture_default_str();
  baseline->add_option("--looks", o.looks, "Number of looks (Lee noise variance)")
      ->check(CLI::Range(1u, 1000000u))
      ->capture_default_str();
  add_maxval_flag(baseline, o);

  auto* metrics = app.add_subcommand("metrics", "Print NV MSD NMV NSD ENL DR FOM for a clean/noisy/despeckled triple");
  metrics->add_option("--clean", o.clean, "Clean reference PGM")->required();
  metrics->add_option("--noisy", o.noisy, "Speckled PGM")->required();
  metrics->add_option("--despeckled", o.despeckled, "Filtered PGM")->required();
  metrics->add_option("--block", o.block, "ENL tile size")->capture_default_str();
  metrics->add_option("--tau", o.tau, "Edge threshold as a fraction of the peak gradient")->capture_default_str();
  metrics->add_option("--alpha", o.alpha, "Figure-of-merit distance penalty")->capture_default_str();
  metrics->add_option("--name", o.name, "Row label for the text table")->capture_default_str();
  metrics->add_option("--csv-out", o.csv_out, "Also write the row as CSV");

  auto* surface = app.add_subcommand("surface", "Export the controller output surface as CSV");
  surface->add_option("--grid-n", o.grid_n, "Grid points per axis")->capture_default_str();
  surface->add_option("--out", o.out, "Output CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, err, err);
  }

  try {
    if (speckle->parsed()) return cmd_speckle(o, out, err);
    if (calibrate->parsed()) return cmd_calibrate(o, out, err);
    if (despeckle->parsed()) return cmd_despeckle(o, out, err);
    if (baseline->parsed()) return cmd_baseline(o, out, err);
    if (metrics->parsed()) return cmd_metrics(o, out, err);
    if (surface->parsed()) return cmd_surface(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace despeck::cli
