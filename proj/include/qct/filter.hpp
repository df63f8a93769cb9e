#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qct/core.hpp"
#include "qct/quantum.hpp"
#include "qct/special.hpp"

namespace qct {

namespace detail {

/// P~(k,t), the symmetric-convention Fourier transform of the superposed
/// density, decomposes into four Gaussian-in-k terms
///   exp(-a k^2 + b_j k + c_j) / (2 sqrt(2 pi) (1 + overlap)),
/// two oscillatory (from the displaced packets) and two real-shifted (from
/// the interference envelope). All exponents are non-positive at k real.
struct SpectralTerms {
  double a;                          // common quadratic coefficient, > 0
  std::array<Complex, 4> b;          // linear coefficients
  std::array<double, 4> c;           // constant offsets
  double norm;                       // 2 sqrt(2 pi) (1 + overlap)

  SpectralTerms(double t, const PhysParams& p) {
    const double var = quantum_variance(t, p);  // S
    const double shift = p.d / 2.0 - p.v0 * t;  // D
    const double omega = interference_frequency(t, p);
    a = var / 2.0;
    const Complex i(0.0, 1.0);
    b = {i * shift, -i * shift, Complex(var * omega, 0.0),
         Complex(-var * omega, 0.0)};
    const double env = -var * omega * omega / 2.0 - shift * shift / (2.0 * var);
    c = {0.0, 0.0, env, env};
    norm = 2.0 * std::sqrt(2.0 * std::numbers::pi) * (1.0 + overlap_factor(p));
  }
};

}  // namespace detail

/// Callable closed form of the density's Fourier transform at time t.
struct SpectralDensity {
  PhysParams params;
  double t = 0.0;

  Complex operator()(double k) const;
};

/// Closed-form P~(k,t), assembled in log space.
inline Complex spectral_density(double k, double t, const PhysParams& p) {
  const detail::SpectralTerms s(t, p);
  std::vector<LogComplexTerm> terms;
  terms.reserve(4);
  for (int j = 0; j < 4; ++j) {
    const Complex expo = -s.a * k * k + s.b[j] * k + s.c[j];
    terms.push_back({expo.real(), expo.imag()});
  }
  return sum_log_terms(terms).to_complex() / s.norm;
}

inline Complex SpectralDensity::operator()(double k) const {
  return spectral_density(k, t, params);
}

struct TruncationResult {
  RealField field;
  double k0 = 0.0;
  double max_imag_residue = 0.0;
  bool used_fft_fallback = false;
};

namespace detail {

/// One point of the truncated inverse transform: each spectral term
/// integrates over [-k0, k0] to a scaled erf difference.
inline Complex truncated_density_value(double x, double t, double k0,
                                       const PhysParams& p,
                                       const SpectralTerms& s) {
  const double sqrt_a = std::sqrt(s.a);
  const double seg_norm =
      std::sqrt(std::numbers::pi) / (2.0 * sqrt_a * s.norm *
                                     std::sqrt(2.0 * std::numbers::pi));
  const Complex i(0.0, 1.0);
  Complex acc{};
  for (int j = 0; j < 4; ++j) {
    const Complex lin = s.b[j] + i * x;
    const Complex mu = lin / (2.0 * s.a);
    const Complex expo = s.a * mu * mu + s.c[j];
    const LogComplexTerm pref{expo.real() + std::log(seg_norm), expo.imag()};
    acc += erf_diff_scaled(sqrt_a * (-k0 - mu), sqrt_a * (k0 - mu), pref);
  }
  return acc;
}

}  // namespace detail

/// Point evaluation of P(x,t,k0); imaginary residue reported through
/// the out parameter when given.
inline double truncated_density_point(double x, double t, double k0,
                                      const PhysParams& p,
                                      double* imag_residue = nullptr) {
  if (!(k0 >= 0.0)) throw std::invalid_argument("k0 must be non-negative");
  const detail::SpectralTerms s(t, p);
  const Complex v = detail::truncated_density_value(x, t, k0, p, s);
  if (imag_residue) *imag_residue = std::abs(v.imag());
  return v.real();
}

/// Numerical truncation oracle: sample the density, hard-cut the discrete
/// spectrum at |k| > k0, invert. Throws "grid too narrow" when the density
/// has not decayed below 1e-12 at the edges.
inline RealField truncated_density_fft(const Grid& grid, double t, double k0,
                                       const PhysParams& p) {
  validate_grid(grid);
  if (!(k0 >= 0.0)) throw std::invalid_argument("k0 must be non-negative");
  const WavePacketSpec spec{p, true};
  if (density_superposed(grid.x_min, t, spec) > 1e-12 ||
      density_superposed(grid.x_max, t, spec) > 1e-12)
    throw std::invalid_argument("grid too narrow for spectral truncation");

  const Eigen::Index n = grid.n_points;
  std::vector<std::complex<double>> time_domain(n), freq(n);
  for (Eigen::Index j = 0; j < n; ++j)
    time_domain[size_t(j)] = density_superposed(grid.x(j), t, spec);

  Eigen::FFT<double> fft;
  fft.fwd(freq, time_domain);
  // bin j holds wavenumber 2 pi j' / (n dx) with j' the signed index
  const double dk = 2.0 * std::numbers::pi / (double(n) * grid.dx());
  for (Eigen::Index j = 0; j < n; ++j) {
    const double signed_idx = (j <= n / 2) ? double(j) : double(j - n);
    if (std::abs(signed_idx) * dk > k0) freq[size_t(j)] = 0.0;
  }
  fft.inv(time_domain, freq);

  Eigen::ArrayXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) out(j) = time_domain[size_t(j)].real();
  return {grid, out};
}

/// Analytic truncated density on a grid. Falls back to the FFT route if the
/// scaled erf evaluation reports precision loss anywhere, and records the
/// substitution in the result.
inline TruncationResult truncated_density(const Grid& grid, double t, double k0,
                                          const PhysParams& p) {
  validate_grid(grid);
  if (!(k0 >= 0.0)) throw std::invalid_argument("k0 must be non-negative");
  const detail::SpectralTerms s(t, p);
  Eigen::ArrayXd out(grid.n_points);
  double residue = 0.0;
  for (Eigen::Index j = 0; j < grid.n_points; ++j) {
    try {
      const Complex v =
          detail::truncated_density_value(grid.x(j), t, k0, p, s);
      residue = std::max(residue, std::abs(v.imag()));
      out(j) = v.real();
    } catch (const PrecisionLossError&) {
      RealField f = truncated_density_fft(grid, t, k0, p);
      return {std::move(f), k0, 0.0, true};
    } catch (const OverflowError&) {
      RealField f = truncated_density_fft(grid, t, k0, p);
      return {std::move(f), k0, 0.0, true};
    }
  }
  return {{grid, std::move(out)}, k0, residue, false};
}

/// P(x,t,k0) for each cutoff in k0_values (ascending), for transition plots.
inline std::vector<std::pair<double, double>> transition_scan(
    double x, double t, const std::vector<double>& k0_values,
    const PhysParams& p) {
  for (size_t i = 1; i < k0_values.size(); ++i)
    if (k0_values[i] < k0_values[i - 1])
      throw std::invalid_argument("k0 values must be sorted ascending");
  const detail::SpectralTerms s(t, p);
  std::vector<std::pair<double, double>> out;
  out.reserve(k0_values.size());
  for (double k0 : k0_values) {
    if (!(k0 >= 0.0)) throw std::invalid_argument("k0 must be non-negative");
    out.emplace_back(k0,
                     detail::truncated_density_value(x, t, k0, p, s).real());
  }
  return out;
}

}  // namespace qct
