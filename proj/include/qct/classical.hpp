#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "qct/core.hpp"

namespace qct {

struct ClassicalScenario {
  PhysParams params;
  bool superposed = false;
};

inline ClassicalScenario validate_scenario(const ClassicalScenario& s) {
  validate_params(s.params);
  if (s.superposed && !(s.params.d > 0.0))
    throw std::invalid_argument("superposed scenario needs d > 0");
  return s;
}

struct McConfig {
  std::uint64_t n_samples = 10'000'000;
  std::uint64_t seed = 0;
  int histogram_bins = 200;
  double hist_min = -15.0;
  double hist_max = 15.0;
};

inline McConfig validate_mc(const McConfig& c) {
  if (c.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (c.histogram_bins < 1) throw std::invalid_argument("histogram_bins must be >= 1");
  if (!(c.hist_max > c.hist_min))
    throw std::invalid_argument("histogram range is degenerate");
  return c;
}

inline double gaussian_pdf(double x, double mean, double variance) {
  return std::exp(-(x - mean) * (x - mean) / (2.0 * variance)) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

/// Final-position density of a single packet: the convolution of the
/// initial position and velocity Gaussians under x_f = x_i + v_i t.
inline double classical_density_single(double x, double t, const PhysParams& p) {
  const double var = p.sigma_x * p.sigma_x + p.sigma_v * p.sigma_v * t * t;
  return gaussian_pdf(x, p.x0 + p.v0 * t, var);
}

/// Half-sum of two counter-moving packets, means -+d/2 +- v0 t, common
/// variance sigma^2 + sigma_v^2 t^2. No interference term.
inline double classical_density_superposed(double x, double t, const PhysParams& p) {
  const double var = p.sigma * p.sigma + p.sigma_v * p.sigma_v * t * t;
  return 0.5 * (gaussian_pdf(x, p.d / 2.0 - p.v0 * t, var) +
                gaussian_pdf(x, -p.d / 2.0 + p.v0 * t, var));
}

namespace detail {

/// Counter-based generator: the splitmix64 output function applied to
/// seed + counter * golden ratio. Results depend only on (seed, counter),
/// never on scheduling.
inline std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t x = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  // (0, 1]: safe for the Box-Muller logarithm
  return double((counter_mix(seed, counter) >> 11) + 1) * 0x1.0p-53;
}

struct NormalPair {
  double z1, z2;
};

inline NormalPair box_muller(double u1, double u2) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace detail

/// Monte Carlo histogram of final positions, normalized to a density
/// (count / (n_samples * bin_width)). Deterministic given the seed.
inline RealField sample_trajectories(const ClassicalScenario& scenario, double t,
                                     const McConfig& mc_in) {
  const McConfig mc = validate_mc(mc_in);
  validate_scenario(scenario);
  const PhysParams& p = scenario.params;

  const int nb = mc.histogram_bins;
  const double width = (mc.hist_max - mc.hist_min) / double(nb);
  Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(nb);

  for (std::uint64_t i = 0; i < mc.n_samples; ++i) {
    const double u0 = detail::counter_uniform(mc.seed, 3 * i);
    const double u1 = detail::counter_uniform(mc.seed, 3 * i + 1);
    const double u2 = detail::counter_uniform(mc.seed, 3 * i + 2);
    const auto [z1, z2] = detail::box_muller(u1, u2);

    double xi, vi;
    if (scenario.superposed) {
      // fair coin picks the component; the velocity law follows the
      // component label, not the sign of the sampled position
      if (u0 < 0.5) {
        xi = -p.d / 2.0 + p.sigma * z1;  // left packet, moving right
        vi = p.v0 + p.sigma_v * z2;
      } else {
        xi = p.d / 2.0 + p.sigma * z1;  // right packet, moving left
        vi = -p.v0 + p.sigma_v * z2;
      }
    } else {
      xi = p.x0 + p.sigma_x * z1;
      vi = p.v0 + p.sigma_v * z2;
    }
    const double xf = xi + vi * t;
    const double pos = (xf - mc.hist_min) / width;
    if (pos >= 0.0 && pos < double(nb)) counts(Eigen::Index(pos)) += 1.0;
  }

  // bin-center grid
  Grid g{mc.hist_min + width / 2.0, mc.hist_max - width / 2.0, nb};
  return {g, counts / (double(mc.n_samples) * width)};
}

}  // namespace qct
