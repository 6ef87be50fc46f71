#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "despeck/error.hpp"
#include "despeck/metrics.hpp"
#include "despeck/serial.hpp"
#include "despeck/speckle.hpp"

using namespace despeck;

namespace {

struct Moments {
  double mean;
  double var;
};

Moments moments(const Image& img) {
  double sum = 0.0;
  for (double v : img.pixels()) sum += v;
  const double mean = sum / static_cast<double>(img.size());
  double ss = 0.0;
  for (double v : img.pixels()) ss += (v - mean) * (v - mean);
  return {mean, ss / static_cast<double>(img.size())};
}

}  // namespace

TEST(Speckle, MeanOneAndKnownVariance) {
  const struct {
    SpeckleKind kind;
    unsigned looks;
    double var;
  } cases[] = {
      {SpeckleKind::rayleigh_amplitude, 1, (4.0 - std::numbers::pi) / std::numbers::pi},
      {SpeckleKind::exponential_intensity, 1, 1.0},
      {SpeckleKind::gamma_multilook, 3, 1.0 / 3.0},
      {SpeckleKind::gamma_multilook, 8, 1.0 / 8.0},
  };
  for (const auto& c : cases) {
    const SpeckleSpec spec{c.kind, c.looks, 12345};
    const Moments m = moments(generate_speckle(1000, 1000, spec));
    EXPECT_NEAR(m.mean, 1.0, 0.005) << to_string(c.kind);
    EXPECT_NEAR(m.var, c.var, 0.02 * c.var) << to_string(c.kind);
    EXPECT_DOUBLE_EQ(spec.variance(), c.var);
  }
}

TEST(Speckle, DeterministicPerSeed) {
  const SpeckleSpec a{SpeckleKind::gamma_multilook, 3, 7};
  EXPECT_EQ(generate_speckle(33, 17, a), generate_speckle(33, 17, a));
  SpeckleSpec b = a;
  b.seed = 8;
  EXPECT_NE(generate_speckle(33, 17, a), generate_speckle(33, 17, b));
}

TEST(Speckle, ParallelMatchesSerialBitwise) {
  for (SpeckleKind kind : {SpeckleKind::rayleigh_amplitude, SpeckleKind::exponential_intensity, SpeckleKind::gamma_multilook}) {
    const SpeckleSpec spec{kind, 4, 99};
    EXPECT_EQ(generate_speckle(64, 40, spec), serial::generate_speckle(64, 40, spec)) << to_string(kind);
  }
}

TEST(Speckle, RowsAreIndependentOfImageHeight) {
  const SpeckleSpec spec{SpeckleKind::exponential_intensity, 1, 3};
  const Image small = generate_speckle(4, 10, spec);
  const Image tall = generate_speckle(40, 10, spec);
  for (std::size_t c = 0; c < 10; ++c) EXPECT_EQ(small(3, c), tall(3, c));
}

TEST(Speckle, NoneIsUnitField) {
  const Image s = generate_speckle(3, 3, SpeckleSpec{SpeckleKind::none, 1, 0});
  for (double v : s.pixels()) EXPECT_EQ(v, 1.0);
}

TEST(Speckle, ApplyToZeroAndNegative) {
  const SpeckleSpec spec{SpeckleKind::gamma_multilook, 3, 1};
  const Image zero = apply_speckle(Image(8, 8, 0.0), spec);
  for (double v : zero.pixels()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(apply_speckle(Image(2, 2, -1.0), spec), DomainError);
  EXPECT_THROW(generate_speckle(2, 2, SpeckleSpec{SpeckleKind::gamma_multilook, 0, 1}), ConfigError);
}

TEST(Speckle, ConstantImageEnlMatchesLooks) {
  const Image noisy = apply_speckle(Image(256, 256, 100.0), SpeckleSpec{SpeckleKind::gamma_multilook, 3, 2});
  EXPECT_NEAR(enl_blocked(noisy, 25).enl, 3.0, 0.3);
}

TEST(Speckle, ApplyIsUnbiasedPerPixel) {
  Image img(4, 4);
  for (std::size_t i = 0; i < img.size(); ++i) img.pixels()[i] = 10.0 + 5.0 * static_cast<double>(i);
  std::vector<double> acc(img.size(), 0.0);
  constexpr int kSeeds = 100000;
  for (int s = 0; s < kSeeds; ++s) {
    const Image out = apply_speckle(img, SpeckleSpec{SpeckleKind::gamma_multilook, 3, static_cast<std::uint64_t>(s)});
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += out.pixels()[i];
  }
  for (std::size_t i = 0; i < acc.size(); ++i) EXPECT_NEAR(acc[i] / kSeeds, img.pixels()[i], 0.01 * img.pixels()[i]);
}

TEST(Speckle, KindNames) {
  EXPECT_EQ(speckle_kind_from_string("gamma"), SpeckleKind::gamma_multilook);
  EXPECT_EQ(speckle_kind_from_string("rayleigh"), SpeckleKind::rayleigh_amplitude);
  EXPECT_EQ(speckle_kind_from_string("exponential"), SpeckleKind::exponential_intensity);
  EXPECT_THROW(speckle_kind_from_string("poisson"), ConfigError);
}

TEST(Xoshiro, UniformRange) {
  Xoshiro256 rng(0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
