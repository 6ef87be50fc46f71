#include "despeck/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "despeck/error.hpp"

namespace despeck::fuzzy {

std::string_view label_name(Label l) noexcept {
  switch (l) {
    case Label::NB: return "NB";
    case Label::NS: return "NS";
    case Label::AZ: return "AZ";
    case Label::PS: return "PS";
    case Label::PB: return "PB";
  }
  return "?";
}

double MembershipBank::grade(Label l, double u) const noexcept {
  return std::max(0.0, 1.0 - std::abs(u - center(l)) / half_width);
}

RuleBase RuleBase::standard() {
  using enum Label;
  // rows: de = NB..PB; columns: e = NB..PB
  return RuleBase{{{
      {NB, NS, NS, AZ, AZ},
      {NB, NS, AZ, AZ, PS},
      {NS, NS, AZ, PS, PS},
      {NS, AZ, AZ, PS, PB},
      {AZ, AZ, PS, PS, PB},
  }}};
}

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

double clamp_unit(double u) { return std::clamp(u, -1.0, 1.0); }

}  // namespace

ControllerConfig ControllerConfig::resolved(double peak, double lambda0) const {
  ControllerConfig out = *this;
  if (!out.e_scale || !out.de_scale) {
    if (!positive_finite(peak)) throw ConfigError("controller: reference peak must be positive to derive input scales");
    if (!out.e_scale) out.e_scale = 1.0 / peak;
    if (!out.de_scale) out.de_scale = 1.0 / peak;
  }
  if (!out.dlambda_scale) {
    if (!positive_finite(lambda0)) throw ConfigError("controller: initial threshold must be positive to derive output scale");
    out.dlambda_scale = 0.1 * lambda0;
  }
  out.validate();
  return out;
}

void ControllerConfig::validate() const {
  if (!e_scale || !de_scale || !dlambda_scale) throw ConfigError("controller: scale factors are unset");
  if (!positive_finite(*e_scale) || !positive_finite(*de_scale) || !positive_finite(*dlambda_scale) ||
      !positive_finite(k_p) || !positive_finite(t_i)) {
    throw ConfigError("controller: gains must be positive and finite");
  }
}

ScalarError scalarize(const Image& error_image, double eh) {
  require_nonempty(error_image, "scalarize");
  auto px = error_image.pixels();
  std::size_t best = 0;
  double best_mag = std::abs(px[0]);
  for (std::size_t i = 1; i < px.size(); ++i) {
    const double m = std::abs(px[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  const double e = px[best];
  return {e, e - eh, eh};
}

Grades fuzzify(double u, const MembershipBank& bank) {
  const double v = clamp_unit(u);
  Grades g{};
  for (Label l : kLabels) g[static_cast<std::size_t>(l)] = bank.grade(l, v);
  return g;
}

double infer(const Grades& e_grades, const Grades& de_grades, const RuleBase& rules, const MembershipBank& bank) {
  double num = 0.0;
  double den = 0.0;
  for (Label de : kLabels) {
    const double gd = de_grades[static_cast<std::size_t>(de)];
    if (gd <= 0.0) continue;
    for (Label e : kLabels) {
      const double w = std::min(gd, e_grades[static_cast<std::size_t>(e)]);
      if (w <= 0.0) continue;
      num += w * bank.center(rules(de, e));
      den += w;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

double control_step(const ScalarError& err, const ControllerConfig& cfg, const MembershipBank& bank,
                    const RuleBase& rules) {
  cfg.validate();
  const double u_e = clamp_unit(err.e * *cfg.e_scale);
  const double u_de = clamp_unit(err.de * *cfg.de_scale);
  return *cfg.dlambda_scale * cfg.k_p * infer(fuzzify(u_e, bank), fuzzify(u_de, bank), rules, bank);
}

double linear_pi_step(const ScalarError& err, const ControllerConfig& cfg) {
  if (!positive_finite(cfg.k_p) || !positive_finite(cfg.t_i)) throw ConfigError("controller: gains must be positive and finite");
  return cfg.k_p * (err.de + err.e / cfg.t_i);
}

Surface output_surface(std::size_t grid_n, const MembershipBank& bank, const RuleBase& rules) {
  if (grid_n < 2) throw ConfigError("output_surface: grid_n must be at least 2");
  Surface s{grid_n, std::vector<double>(grid_n * grid_n)};
  const double step = 2.0 / static_cast<double>(grid_n - 1);
  std::vector<Grades> grades(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) grades[i] = fuzzify(-1.0 + step * static_cast<double>(i), bank);
  for (std::size_t i = 0; i < grid_n; ++i)
    for (std::size_t j = 0; j < grid_n; ++j) s.values[i * grid_n + j] = infer(grades[j], grades[i], rules, bank);
  return s;
}

void write_surface_csv(std::ostream& out, const Surface& surface) {
  out << "e_min,e_max,n\n" << "-1,1," << surface.n << "\n";
  for (std::size_t i = 0; i < surface.n; ++i) {
    for (std::size_t j = 0; j < surface.n; ++j) {
      if (j) out << ',';
      out << fmt::format("{:.17g}", surface(i, j));
    }
    out << '\n';
  }
}

}  // namespace despeck::fuzzy
