#include "despeck/speckle.hpp"

#include <cmath>
#include <numbers>

#include "despeck/error.hpp"

namespace despeck {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

// -ln(1 - U), U in [0, 1): finite and nonnegative.
double unit_exponential(Xoshiro256& rng) noexcept { return -std::log1p(-rng.uniform()); }

double draw(const SpeckleSpec& spec, Xoshiro256& rng) noexcept {
  switch (spec.kind) {
    case SpeckleKind::rayleigh_amplitude: {
      static const double sigma = std::sqrt(2.0 / std::numbers::pi);
      return sigma * std::sqrt(2.0 * unit_exponential(rng));
    }
    case SpeckleKind::exponential_intensity:
      return unit_exponential(rng);
    case SpeckleKind::gamma_multilook: {
      double sum = 0.0;
      for (unsigned i = 0; i < spec.looks; ++i) sum += unit_exponential(rng);
      return sum / spec.looks;
    }
    case SpeckleKind::none:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64(sm);
}

Xoshiro256::result_type Xoshiro256::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

Xoshiro256 Xoshiro256::substream(std::uint64_t seed, std::uint64_t row) noexcept {
  std::uint64_t sm = seed ^ (row * 0xD1B54A32D192ED03ull);
  return Xoshiro256(splitmix64(sm) ^ row);
}

SpeckleKind speckle_kind_from_string(const std::string& s) {
  if (s == "rayleigh" || s == "rayleigh_amplitude") return SpeckleKind::rayleigh_amplitude;
  if (s == "exponential" || s == "exponential_intensity") return SpeckleKind::exponential_intensity;
  if (s == "gamma" || s == "gamma_multilook") return SpeckleKind::gamma_multilook;
  if (s == "none") return SpeckleKind::none;
  throw ConfigError("unknown speckle kind '" + s + "' (expected rayleigh, exponential or gamma)");
}

std::string to_string(SpeckleKind kind) {
  switch (kind) {
    case SpeckleKind::rayleigh_amplitude: return "rayleigh";
    case SpeckleKind::exponential_intensity: return "exponential";
    case SpeckleKind::gamma_multilook: return "gamma";
    case SpeckleKind::none: return "none";
  }
  return "?";
}

void SpeckleSpec::validate() const {
  if (looks < 1) throw ConfigError("speckle: looks must be at least 1");
}

double SpeckleSpec::variance() const {
  switch (kind) {
    case SpeckleKind::rayleigh_amplitude: return (4.0 - std::numbers::pi) / std::numbers::pi;
    case SpeckleKind::exponential_intensity: return 1.0;
    case SpeckleKind::gamma_multilook: return 1.0 / looks;
    case SpeckleKind::none: return 0.0;
  }
  return 0.0;
}

Image generate_speckle(std::size_t rows, std::size_t cols, const SpeckleSpec& spec) {
  spec.validate();
  Image field(rows, cols, 1.0);
  if (spec.kind == SpeckleKind::none) return field;
  const auto n_rows = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n_rows; ++r) {
    Xoshiro256 rng = Xoshiro256::substream(spec.seed, static_cast<std::uint64_t>(r));
    for (double& v : field.row(static_cast<std::size_t>(r))) v = draw(spec, rng);
  }
  return field;
}

Image apply_speckle(const Image& img, const SpeckleSpec& spec) {
  require_nonempty(img, "apply_speckle");
  require_nonnegative(img, "apply_speckle");
  Image out = generate_speckle(img.rows(), img.cols(), spec);
  auto px = out.pixels();
  auto src = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] *= src[i];
  return out;
}

}  // namespace despeck
