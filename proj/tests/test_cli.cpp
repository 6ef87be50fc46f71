#include <gtest/gtest.h>

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "despeck/cli.hpp"
#include "despeck/image_io.hpp"
#include "despeck/phantom.hpp"
#include "test_util.hpp"

using despeck::testutil::TempDir;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = despeck::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json last_json(const Result& r) {
  std::istringstream in(r.out);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return json::parse(last);
}

std::string write_phantom(const TempDir& dir, std::size_t n = 64) {
  const std::string path = (dir / "clean.pgm").string();
  despeck::write_file(path, despeck::write_pgm(despeck::make_phantom(n, n), 255));
  return path;
}

std::string slurp(const std::string& path) {
  const auto bytes = despeck::read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace

TEST(Cli, SpeckleIsDeterministic) {
  TempDir dir;
  const std::string clean = write_phantom(dir);
  const std::string a = (dir / "a.pgm").string(), b = (dir / "b.pgm").string();
  const Result ra = run({"speckle", "--in", clean, "--out", a, "--kind", "gamma", "--looks", "3", "--seed", "42"});
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(run({"speckle", "--in", clean, "--out", b, "--kind", "gamma", "--looks", "3", "--seed", "42"}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(last_json(ra)["command"], "speckle");
  const auto img = despeck::decode_pgm(despeck::read_file(a));
  EXPECT_EQ(img.maxval, 255u);
  EXPECT_EQ(img.image.rows(), 64u);
}

TEST(Cli, MissingInputFails) {
  TempDir dir;
  const Result r = run({"speckle", "--in", (dir / "nope.pgm").string(), "--out", (dir / "x.pgm").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, CalibrateLooseEpsilonConvergesAtOnce) {
  TempDir dir;
  const std::string clean = write_phantom(dir);
  const std::string trace = (dir / "trace.csv").string();
  const Result r = run({"calibrate", "--clean", clean, "--epsilon", "1e9", "--trace-out", trace});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = last_json(r);
  EXPECT_EQ(j["converged"], true);
  EXPECT_EQ(j["iterations"], 1);
  const std::string csv = slurp(trace);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Cli, CalibrateTraceRowsMatchIterations) {
  TempDir dir;
  const std::string clean = write_phantom(dir);
  const std::string trace = (dir / "trace.csv").string();
  const Result r = run({"calibrate", "--clean", clean, "--kind", "gamma", "--looks", "3", "--seed", "42", "--max-iter",
                        "12", "--trace-out", trace});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = last_json(r);
  EXPECT_GT(j["lambda_star"].get<double>(), 0.0);
  EXPECT_LE(j["iterations"].get<int>(), 12);
  const std::string csv = slurp(trace);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), j["iterations"].get<long>() + 1);
}

TEST(Cli, EndToEndMetricsKeyOrder) {
  TempDir dir;
  const std::string clean = write_phantom(dir);
  const std::string noisy = (dir / "noisy.pgm").string(), den = (dir / "den.pgm").string();
  const std::string csv = (dir / "m.csv").string();
  ASSERT_EQ(run({"speckle", "--in", clean, "--out", noisy}).code, 0);
  ASSERT_EQ(run({"despeckle", "--in", noisy, "--out", den, "--lambda", "2.5"}).code, 0);
  const Result r = run({"metrics", "--clean", clean, "--noisy", noisy, "--despeckled", den, "--csv-out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = last_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "command" && it.key() != "name" && it.key() != "clean_MSE") keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"NV", "MSD", "NMV", "NSD", "ENL", "DR", "FOM"}));
  EXPECT_GT(j["clean_MSE"].get<double>(), 0.0);
  EXPECT_EQ(slurp(csv).substr(0, 26), "NV,MSD,NMV,NSD,ENL,DR,FOM\n");
}

TEST(Cli, BaselineFilters) {
  TempDir dir;
  const std::string clean = write_phantom(dir);
  const std::string out = (dir / "out.pgm").string();
  EXPECT_EQ(run({"baseline", "--filter", "median", "--in", clean, "--out", out, "--kernel", "5"}).code, 0);
  const Result lee = run({"baseline", "--filter", "lee", "--in", clean, "--out", out, "--looks", "4"});
  ASSERT_EQ(lee.code, 0) << lee.err;
  EXPECT_DOUBLE_EQ(last_json(lee)["noise_var"].get<double>(), 0.25);
  EXPECT_NE(run({"baseline", "--filter", "median", "--in", clean, "--out", out, "--kernel", "2"}).code, 0);
  EXPECT_NE(run({"baseline", "--filter", "wiener", "--in", clean, "--out", out}).code, 0);
}

TEST(Cli, SurfaceGrid) {
  TempDir dir;
  const std::string out = (dir / "s.csv").string();
  ASSERT_EQ(run({"surface", "--grid-n", "5", "--out", out}).code, 0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "e_min,e_max,n");
  std::getline(in, line);
  EXPECT_EQ(line, "-1,1,5");
  std::vector<std::vector<double>> grid;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    grid.push_back(row);
  }
  ASSERT_EQ(grid.size(), 5u);
  for (const auto& row : grid) ASSERT_EQ(row.size(), 5u);
  EXPECT_NEAR(std::abs(grid[0][0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(grid[4][4]), 1.0, 1e-12);
  EXPECT_NEAR(grid[2][2], 0.0, 1e-12);
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"speckle", "--bogus"}).code, 0);
  EXPECT_NE(run({"frobnicate"}).code, 0);
  EXPECT_NE(run({"surface", "--grid-n", "1", "--out", "/tmp/x.csv"}).code, 0);
}
