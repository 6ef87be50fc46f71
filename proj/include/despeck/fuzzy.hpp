#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "despeck/image.hpp"

namespace despeck::fuzzy {

/// Linguistic labels over the normalized universe [-1, 1].
enum class Label : std::size_t { NB = 0, NS, AZ, PS, PB };

inline constexpr std::size_t kLabelCount = 5;
inline constexpr std::array<Label, kLabelCount> kLabels{Label::NB, Label::NS, Label::AZ, Label::PS, Label::PB};

std::string_view label_name(Label l) noexcept;

/// Mirror label: NB <-> PB, NS <-> PS, AZ fixed.
constexpr Label negate(Label l) noexcept {
  return static_cast<Label>(kLabelCount - 1 - static_cast<std::size_t>(l));
}

/// Grade of each label, indexed by Label.
using Grades = std::array<double, kLabelCount>;

/// Five triangular sets centred at -1, -0.5, 0, 0.5, 1 with half-width 0.5.
struct MembershipBank {
  std::array<double, kLabelCount> centers{-1.0, -0.5, 0.0, 0.5, 1.0};
  double half_width = 0.5;

  double center(Label l) const noexcept { return centers[static_cast<std::size_t>(l)]; }
  double grade(Label l, double u) const noexcept;
};

/// Output label for each (change-in-error, error) pair. Rows index the
/// change in error, columns index the error.
struct RuleBase {
  std::array<std::array<Label, kLabelCount>, kLabelCount> cells;

  Label operator()(Label de, Label e) const noexcept {
    return cells[static_cast<std::size_t>(de)][static_cast<std::size_t>(e)];
  }

  /// PI-type table with a wide band of zeros along the diagonal.
  static RuleBase standard();
};

/// Controller gains. The three scale factors may be left unset and filled in
/// from the calibration context with resolved().
struct ControllerConfig {
  std::optional<double> e_scale;        // raw error -> [-1, 1]
  std::optional<double> de_scale;       // raw change in error -> [-1, 1]
  std::optional<double> dlambda_scale;  // normalized output -> raw threshold step
  double k_p = 1.0;
  double t_i = 1.0;  // integral time; used only by linear_pi_step

  /// Fills unset scales: e_scale = de_scale = 1 / peak, dlambda_scale =
  /// 0.1 * lambda0. Explicit values are kept. Throws ConfigError when a
  /// required default cannot be formed (peak or lambda0 not positive).
  ControllerConfig resolved(double peak, double lambda0) const;

  /// Throws ConfigError unless every gain is set, positive and finite.
  void validate() const;
};

/// Peak signed error of an error image plus its change from the previous one.
struct ScalarError {
  double e = 0.0;
  double de = 0.0;
  double eh = 0.0;
};

/// Locates the pixel of largest magnitude (first in row-major order on ties)
/// and returns its signed value as e, with de = e - eh.
ScalarError scalarize(const Image& error_image, double eh);

/// Grades of all labels at u, after clamping u into [-1, 1].
Grades fuzzify(double u, const MembershipBank& bank = {});

/// Min-AND rule firing with center-average defuzzification. Returns 0 when no
/// rule fires.
double infer(const Grades& e_grades, const Grades& de_grades, const RuleBase& rules = RuleBase::standard(),
             const MembershipBank& bank = {});

/// Raw threshold increment for one controller step.
double control_step(const ScalarError& err, const ControllerConfig& cfg, const MembershipBank& bank = {},
                    const RuleBase& rules = RuleBase::standard());

/// The linear PI law k_P * (de + e / T_I) on raw inputs.
double linear_pi_step(const ScalarError& err, const ControllerConfig& cfg);

/// grid_n x grid_n samples of infer over [-1, 1]^2. Row i holds change in
/// error -1 + 2i/(grid_n-1); column j holds error -1 + 2j/(grid_n-1).
struct Surface {
  std::size_t n = 0;
  std::vector<double> values;  // row-major

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
};

Surface output_surface(std::size_t grid_n, const MembershipBank& bank = {},
                       const RuleBase& rules = RuleBase::standard());

/// CSV: "e_min,e_max,n" header, one line with those values, then n rows of n
/// comma-separated outputs.
void write_surface_csv(std::ostream& out, const Surface& surface);

}  // namespace despeck::fuzzy
