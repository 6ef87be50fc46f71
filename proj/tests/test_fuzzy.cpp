#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "despeck/error.hpp"
#include "despeck/fuzzy.hpp"

using namespace despeck;
using namespace despeck::fuzzy;

namespace {

constexpr double kGrid[9] = {-1, -0.75, -0.5, -0.25, 0, 0.25, 0.5, 0.75, 1};

// Membership values at the nine quantization levels, rows NB..PB.
constexpr double kTableI[5][9] = {
    {1, 0.5, 0, 0, 0, 0, 0, 0, 0},  // NB
    {0, 0.5, 1, 0.5, 0, 0, 0, 0, 0},  // NS
    {0, 0, 0, 0.5, 1, 0.5, 0, 0, 0},  // AZ
    {0, 0, 0, 0, 0, 0.5, 1, 0.5, 0},  // PS
    {0, 0, 0, 0, 0, 0, 0, 0.5, 1},  // PB
};

// Rule table: rows change in error NB..PB, columns error NB..PB.
constexpr const char* kTableII[5][5] = {
    {"NB", "NS", "NS", "AZ", "AZ"},
    {"NB", "NS", "AZ", "AZ", "PS"},
    {"NS", "NS", "AZ", "PS", "PS"},
    {"NS", "AZ", "AZ", "PS", "PB"},
    {"AZ", "AZ", "PS", "PS", "PB"},
};

double infer_at(double e, double de) { return infer(fuzzify(e), fuzzify(de)); }

ControllerConfig unit_gains(double out_gain) {
  ControllerConfig c;
  c.e_scale = 1.0;
  c.de_scale = 1.0;
  c.dlambda_scale = out_gain;
  return c;
}

}  // namespace

TEST(MembershipBank, ReproducesQuantizationTable) {
  for (std::size_t j = 0; j < 9; ++j) {
    const Grades g = fuzzify(kGrid[j]);
    for (std::size_t l = 0; l < 5; ++l) EXPECT_EQ(g[l], kTableI[l][j]) << label_name(kLabels[l]) << " at " << kGrid[j];
  }
}

TEST(MembershipBank, Examples) {
  EXPECT_EQ(fuzzify(0.5), (Grades{0, 0, 0, 1, 0}));
  EXPECT_EQ(fuzzify(0.25), (Grades{0, 0, 0.5, 0.5, 0}));
  EXPECT_EQ(fuzzify(1.7), (Grades{0, 0, 0, 0, 1}));
  EXPECT_EQ(fuzzify(-9.0), (Grades{1, 0, 0, 0, 0}));
}

TEST(MembershipBank, OverlappingPartition) {
  for (int i = 0; i <= 1000; ++i) {
    const Grades g = fuzzify(-1.0 + 2.0 * i / 1000.0);
    double sum = 0.0;
    for (double v : g) sum += v;
    EXPECT_GE(sum, 1.0 - 1e-12);
    EXPECT_LE(sum, 2.0);
  }
}

TEST(RuleBase, MatchesTableAndIsAntisymmetric) {
  const RuleBase rules = RuleBase::standard();
  for (Label de : kLabels) {
    for (Label e : kLabels) {
      EXPECT_EQ(label_name(rules(de, e)), kTableII[static_cast<std::size_t>(de)][static_cast<std::size_t>(e)]);
      EXPECT_EQ(rules(negate(de), negate(e)), negate(rules(de, e)));
    }
  }
}

TEST(Infer, ProseRuleNsPsGivesZero) { EXPECT_EQ(infer_at(-0.5, 0.5), 0.0); }

TEST(Infer, CornerCells) {
  EXPECT_EQ(infer_at(-1, -1), -1.0);
  EXPECT_EQ(infer_at(1, 1), 1.0);
}

TEST(Infer, CenterAverageOfTwoRules) { EXPECT_DOUBLE_EQ(infer_at(0.25, 0.0), 0.25); }

TEST(Infer, NoActivationGivesZero) { EXPECT_EQ(infer(Grades{}, Grades{}), 0.0); }

TEST(Infer, PureLabelInputsGiveCellCenters) {
  const MembershipBank bank;
  const RuleBase rules = RuleBase::standard();
  for (Label de : kLabels)
    for (Label e : kLabels) EXPECT_EQ(infer_at(bank.center(e), bank.center(de)), bank.center(rules(de, e)));
}

TEST(Infer, AntisymmetricOnDenseGrid) {
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double e = -1.0 + 0.02 * i, de = -1.0 + 0.02 * j;
      const double out = infer_at(e, de);
      EXPECT_NEAR(infer_at(-e, -de), -out, 1e-12);
      EXPECT_GE(out, -1.0);
      EXPECT_LE(out, 1.0);
    }
  }
}

TEST(Infer, MonotoneInErrorOnQuantizationGrid) {
  for (double de : kGrid) {
    for (std::size_t j = 1; j < 9; ++j) EXPECT_LE(infer_at(kGrid[j - 1], de), infer_at(kGrid[j], de)) << de;
  }
}

TEST(Infer, OutputWithinFiredRuleCentersOnQuantizationGrid) {
  const MembershipBank bank;
  const RuleBase rules = RuleBase::standard();
  for (double e : kGrid) {
    for (double de : kGrid) {
      const Grades ge = fuzzify(e), gd = fuzzify(de);
      double lo = 2.0, hi = -2.0;
      for (Label a : kLabels) {
        for (Label b : kLabels) {
          if (std::min(gd[static_cast<std::size_t>(a)], ge[static_cast<std::size_t>(b)]) > 0.0) {
            lo = std::min(lo, bank.center(rules(a, b)));
            hi = std::max(hi, bank.center(rules(a, b)));
          }
        }
      }
      const double out = infer(ge, gd);
      EXPECT_GE(out, lo) << e << "," << de;
      EXPECT_LE(out, hi) << e << "," << de;
    }
  }
}

TEST(Scalarize, PicksSignedPeak) {
  const ScalarError s = scalarize(Image(2, 2, std::vector<double>{1, -5, 2, 3}), 0.0);
  EXPECT_EQ(s.e, -5.0);
  EXPECT_EQ(s.de, -5.0);
}

TEST(Scalarize, ZeroImage) {
  const ScalarError s = scalarize(Image(3, 3), 0.0);
  EXPECT_EQ(s.e, 0.0);
  EXPECT_EQ(s.de, 0.0);
}

TEST(Scalarize, TiesGoToEarliestPixel) {
  const ScalarError s = scalarize(Image(1, 2, std::vector<double>{4, -4}), 1.0);
  EXPECT_EQ(s.e, 4.0);
  EXPECT_EQ(s.de, 3.0);
  EXPECT_EQ(s.eh, 1.0);
  EXPECT_EQ(scalarize(Image(2, 1, std::vector<double>{-4, 4}), 0.0).e, -4.0);
  EXPECT_THROW(scalarize(Image(), 0.0), DimensionError);
}

TEST(ControlStep, ZeroErrorGivesZeroStep) { EXPECT_EQ(control_step({0, 0, 0}, unit_gains(0.3)), 0.0); }

TEST(ControlStep, SaturatedNegativeCorner) {
  EXPECT_DOUBLE_EQ(control_step({-1, -1, 0}, unit_gains(0.1)), -0.1);
  ControllerConfig c = unit_gains(0.05);
  c.k_p = 2.0;
  EXPECT_DOUBLE_EQ(control_step({-3, -7, 0}, c), -0.1);  // clamped inputs
}

TEST(ControlStep, OddUnderSignFlip) {
  ControllerConfig c;
  c.e_scale = 1.0 / 200.0;
  c.de_scale = 1.0 / 150.0;
  c.dlambda_scale = 0.27;
  for (int i = -30; i <= 30; ++i) {
    for (int j = -30; j <= 30; ++j) {
      const double e = 8.0 * i, de = 6.0 * j;
      EXPECT_NEAR(control_step({-e, -de, 0}, c), -control_step({e, de, 0}, c), 1e-12);
    }
  }
}

TEST(ControllerConfig, ResolvesDefaults) {
  const ControllerConfig c = ControllerConfig{}.resolved(200.0, 3.0);
  EXPECT_DOUBLE_EQ(*c.e_scale, 1.0 / 200.0);
  EXPECT_DOUBLE_EQ(*c.de_scale, 1.0 / 200.0);
  EXPECT_DOUBLE_EQ(*c.dlambda_scale, 0.3);
  EXPECT_EQ(c.k_p, 1.0);

  ControllerConfig explicit_gain;
  explicit_gain.e_scale = 0.5;
  EXPECT_EQ(*explicit_gain.resolved(200.0, 3.0).e_scale, 0.5);

  EXPECT_THROW(ControllerConfig{}.resolved(0.0, 3.0), ConfigError);
  EXPECT_THROW(ControllerConfig{}.resolved(10.0, 0.0), ConfigError);
  EXPECT_THROW(control_step({1, 1, 0}, ControllerConfig{}), ConfigError);
  ControllerConfig neg = unit_gains(1.0);
  neg.k_p = -1.0;
  EXPECT_THROW(neg.validate(), ConfigError);
}

TEST(LinearPi, MatchesFormula) {
  ControllerConfig c;
  c.k_p = 2.0;
  c.t_i = 4.0;
  EXPECT_DOUBLE_EQ(linear_pi_step({8.0, 1.0, 7.0}, c), 2.0 * (1.0 + 8.0 / 4.0));
}

TEST(OutputSurface, CenterCornersAndRotation) {
  const Surface s = output_surface(21);
  EXPECT_EQ(s(10, 10), 0.0);
  EXPECT_EQ(s(0, 0), -1.0);
  EXPECT_EQ(s(20, 20), 1.0);
  for (std::size_t i = 0; i < 21; ++i)
    for (std::size_t j = 0; j < 21; ++j) EXPECT_NEAR(s(20 - i, 20 - j), -s(i, j), 1e-12);
  EXPECT_THROW(output_surface(1), ConfigError);
}

TEST(OutputSurface, CsvLayout) {
  std::ostringstream out;
  write_surface_csv(out, output_surface(5));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "e_min,e_max,n");
  std::getline(in, line);
  EXPECT_EQ(line, "-1,1,5");
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) values.push_back(std::stod(cell));
  }
  EXPECT_EQ(rows, 5u);
  ASSERT_EQ(values.size(), 25u);
  EXPECT_EQ(values.front(), -1.0);
  EXPECT_EQ(values.back(), 1.0);
}
