#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace qct {

using Complex = std::complex<double>;

class OverflowError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PrecisionLossError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A complex number exp(log_magnitude) * exp(i * phase). log_magnitude may
/// exceed the double exponent range; combine terms before exponentiating.
struct LogComplexTerm {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplexTerm from_complex(Complex z) {
    if (z == Complex{}) return {};
    return {std::log(std::abs(z)), std::arg(z)};
  }

  Complex to_complex() const {
    if (std::isinf(log_magnitude) && log_magnitude < 0.0) return {};
    if (log_magnitude > 709.0)
      throw OverflowError("LogComplexTerm: magnitude exceeds double range");
    return std::polar(std::exp(log_magnitude), phase);
  }
};

/// Log-sum-exp generalized to complex phases: factor out the largest
/// magnitude, sum the rest in ordinary arithmetic.
inline LogComplexTerm sum_log_terms(std::span<const LogComplexTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("sum_log_terms: empty list");
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) lmax = std::max(lmax, t.log_magnitude);
  if (std::isinf(lmax) && lmax < 0.0) return {};
  Complex acc{};
  for (const auto& t : terms)
    acc += std::polar(std::exp(t.log_magnitude - lmax), t.phase);
  // below the summation roundoff floor the residue carries no information;
  // report full cancellation instead of noise
  const double floor_ = double(terms.size()) *
                        std::numeric_limits<double>::epsilon();
  if (std::abs(acc) <= floor_) return {};
  return {lmax + std::log(std::abs(acc)), std::arg(acc)};
}

inline LogComplexTerm sum_log_terms(std::initializer_list<LogComplexTerm> terms) {
  return sum_log_terms(std::span<const LogComplexTerm>(terms.begin(), terms.size()));
}

namespace detail {

inline constexpr double kSqrtPi = 1.7724538509055160273;

/// Dawson integral by the sampling series with step h = 0.2; the
/// discretization error e^{-(pi/2h)^2} is below double precision.
inline double dawson(double x) {
  constexpr double h = 0.2;
  const int lo = int(std::floor((x - 7.0) / h));
  const int hi = int(std::ceil((x + 7.0) / h));
  double s = 0.0;
  for (int n = lo | 1; n <= hi; n += 2) {
    const double dx = x - double(n) * h;
    s += std::exp(-dx * dx) / double(n);
  }
  return s / kSqrtPi;
}

inline Complex faddeeva_real_axis(double x) {
  const double re = (x * x < 700.0) ? std::exp(-x * x) : 0.0;
  return {re, 2.0 / kSqrtPi * dawson(x)};
}

/// Laplace continued fraction, backward recurrence.
inline Complex faddeeva_cf(Complex z, int terms) {
  Complex f{};
  for (int n = terms; n >= 1; --n) f = (0.5 * double(n)) / (z - f);
  return Complex(0.0, 1.0 / kSqrtPi) / (z - f);
}

/// Trapezoid sampling of the defining integral plus the pole-residue
/// correction; requires Im(z) >= 0.5 so the correction denominator stays
/// away from zero.
inline Complex faddeeva_sampled(Complex z) {
  constexpr double h = 0.25;
  constexpr int N = 30;  // nodes cover |t| <= 7.5
  Complex s{};
  for (int n = -N; n <= N; ++n) {
    const double t = double(n) * h;
    s += std::exp(-t * t) / (z - t);
  }
  s *= Complex(0.0, h / std::numbers::pi);
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  s += 2.0 * std::exp(-z * z) / (1.0 - std::exp(-two_pi_i * z / h));
  return s;
}

/// Taylor expansion off the real axis, seeded by the real-axis value; valid
/// for small Im(z) where the sampled form loses its pole-correction margin.
inline Complex faddeeva_taylor(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const Complex iy(0.0, y);
  Complex c_prev = faddeeva_real_axis(x);
  Complex c_cur = -2.0 * x * c_prev + Complex(0.0, 2.0 / kSqrtPi);
  Complex res = c_prev + c_cur * iy;
  Complex p = iy;
  for (int n = 1; n < 64; ++n) {
    const Complex c_next = -2.0 * (x * c_cur + c_prev) / double(n + 1);
    p *= iy;
    const Complex term = c_next * p;
    res += term;
    if (std::abs(term) < 1e-18 * std::abs(res)) break;
    c_prev = c_cur;
    c_cur = c_next;
  }
  return res;
}

}  // namespace detail

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
inline Complex faddeeva_w(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (y < 0.0) {
    // w(z) = 2 exp(-z^2) - w(-z)
    const Complex mz2 = -z * z;
    if (mz2.real() > 700.0)
      throw OverflowError("faddeeva_w: exp(-z^2) overflows for Im(z) < 0");
    return 2.0 * std::exp(mz2) - faddeeva_w(-z);
  }
  const double ex = x / 6.3;
  const double ey = y / 4.4;
  if (ex * ex + ey * ey > 1.0)
    return detail::faddeeva_cf(z, std::abs(z) < 15.0 ? 30 : 12);
  if (y >= 0.5) return detail::faddeeva_sampled(z);
  if (y == 0.0) return detail::faddeeva_real_axis(x);
  return detail::faddeeva_taylor(z);
}

namespace detail {

/// Maclaurin series; used for |z| <= 1 where it is cancellation-free.
inline Complex erf_series(Complex z) {
  const Complex zz = z * z;
  Complex term = z;
  Complex s = z;
  for (int n = 1; n < 48; ++n) {
    term *= -zz / double(n);
    const Complex c = term / double(2 * n + 1);
    s += c;
    if (std::abs(c) < 1e-18 * std::abs(s)) break;
  }
  return s * (2.0 / kSqrtPi);
}

}  // namespace detail

/// erf for complex argument. Throws OverflowError when the result magnitude
/// exceeds the double range (|Im z| >> |Re z|, roughly |Im z| > 26); use
/// erf_diff_scaled for those regimes.
inline Complex erf_complex(Complex z) {
  if (std::abs(z) <= 1.0) return detail::erf_series(z);
  double sgn = 1.0;
  if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) {
    z = -z;
    sgn = -1.0;
  }
  const Complex mz2 = -z * z;
  if (mz2.real() > 700.0)
    throw OverflowError("erf_complex: intermediate exp(-z^2) exceeds double range");
  return sgn * (1.0 - std::exp(mz2) * faddeeva_w(Complex(-z.imag(), z.real())));
}

namespace detail {

/// Appends the log-space decomposition of sign * exp(L) * erf(z).
/// Returns the +-1 / 0 constant carried out of the erfc reduction so the
/// caller can cancel constants between endpoints analytically.
inline int erf_log_terms(Complex z, double sign, const LogComplexTerm& L,
                         std::vector<LogComplexTerm>& out) {
  if (std::abs(z) <= 1.0) {
    const Complex e = erf_series(z);
    if (e != Complex{})
      out.push_back({L.log_magnitude + std::log(std::abs(e)),
                     L.phase + std::arg(e) + (sign < 0.0 ? std::numbers::pi : 0.0)});
    return 0;
  }
  double sgn = 1.0;
  if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) {
    z = -z;
    sgn = -1.0;
  }
  // sign * erf(z) = sign*sgn - sign*sgn * exp(-z^2) w(iz)
  const Complex mz2 = -z * z;
  const Complex w = faddeeva_w(Complex(-z.imag(), z.real()));
  const double coeff_neg = (sign * sgn > 0.0) ? std::numbers::pi : 0.0;
  out.push_back({L.log_magnitude + mz2.real() + std::log(std::abs(w)),
                 L.phase + mz2.imag() + std::arg(w) + coeff_neg});
  return (sign * sgn > 0.0) ? 1 : -1;
}

}  // namespace detail

/// exp(log_prefactor) * (erf(b) - erf(a)) without intermediate overflow.
/// Throws PrecisionLossError when cancellation leaves fewer than ~6
/// significant digits, OverflowError when the result itself overflows.
inline Complex erf_diff_scaled(Complex a, Complex b, LogComplexTerm log_prefactor) {
  if (a == b) return {};
  std::vector<LogComplexTerm> terms;
  terms.reserve(3);
  int const_count = 0;
  const_count += detail::erf_log_terms(b, +1.0, log_prefactor, terms);
  const_count += detail::erf_log_terms(a, -1.0, log_prefactor, terms);
  if (const_count != 0)
    terms.push_back({log_prefactor.log_magnitude + std::log(double(std::abs(const_count))),
                     log_prefactor.phase +
                         (const_count < 0 ? std::numbers::pi : 0.0)});
  if (terms.empty()) return {};
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) lmax = std::max(lmax, t.log_magnitude);
  const LogComplexTerm total = sum_log_terms(terms);
  if (std::isinf(total.log_magnitude) && total.log_magnitude < 0.0) return {};
  // 10 decades of cancellation out of ~16 leaves < 6 significant digits
  if (lmax - total.log_magnitude > 10.0 * std::numbers::ln10)
    throw PrecisionLossError("erf_diff_scaled: catastrophic cancellation");
  return total.to_complex();
}

}  // namespace qct
