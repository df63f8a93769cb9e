#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qct/core.hpp"
#include "qct/quantum.hpp"
#include "qct/special.hpp"

namespace qct {

/// Left- and right-moving momentum components of the superposed packet.
struct LRDecomposition {
  ComplexField psi_l;
  ComplexField psi_r;
  double t = 0.0;
  PhysParams params;
};

/// Environment overlap <E1|E2> modeled as a constant real scalar.
struct OverlapParam {
  double epsilon = 1.0;
};

inline OverlapParam validate_overlap(const OverlapParam& o) {
  if (!(std::abs(o.epsilon) <= 1.0))
    throw std::invalid_argument("overlap epsilon must lie in [-1, 1]");
  return o;
}

/// Momentum-space amplitude of the superposed initial state: two Gaussians
/// at +-m v0 with opposite position phases.
inline Complex momentum_amplitude(double p_mom, const PhysParams& p) {
  validate_params(p);
  const Complex i(0.0, 1.0);
  const double s2 = p.sigma * p.sigma;
  const double pr = p_mom - p.m * p.v0;
  const double pl = p_mom + p.m * p.v0;
  const Complex right =
      std::exp(-s2 * pr * pr / (p.hbar * p.hbar) + i * (p.d * pr / (2.0 * p.hbar)));
  const Complex left =
      std::exp(-s2 * pl * pl / (p.hbar * p.hbar) - i * (p.d * pl / (2.0 * p.hbar)));
  const double norm = std::pow(2.0 * std::numbers::pi, 0.25) /
                      std::sqrt(p.sigma / p.hbar) *
                      std::sqrt(1.0 + overlap_factor(p));
  return (right + left) / norm;
}

namespace detail {

/// Shared pieces of the left/right closed forms. The bracket terms
/// e^{alpha^2} (1 -+ erf(alpha)) are assembled in log space since the
/// normalization carries exp(d^2/8 sigma^2 + 2 m^2 sigma^2 v0^2 / hbar^2)
/// while each bracket carries comparable positive exponents.
struct LRContext {
  Complex alpha1, alpha2;
  LogComplexTerm prefactor;

  LRContext(double x, double t, const PhysParams& p) {
    const Complex i(0.0, 1.0);
    const double s2 = p.sigma * p.sigma;
    const Complex root = std::sqrt(Complex(4.0 * s2, 2.0 * p.hbar * t / p.m));
    alpha1 = (-4.0 * p.m * s2 * p.v0 + i * (p.hbar * (2.0 * x - p.d))) /
             (2.0 * p.hbar * root);
    alpha2 = (4.0 * p.m * s2 * p.v0 + i * (p.hbar * (p.d + 2.0 * x))) /
             (2.0 * p.hbar * root);

    const double big = p.d * p.d / (8.0 * s2) +
                       2.0 * p.m * p.m * s2 * p.v0 * p.v0 / (p.hbar * p.hbar);
    const Complex packet_width(2.0 * p.m * s2, p.hbar * t);
    // log of sqrt(m sigma) e^{d^2/16 sigma^2} e^{-i d m v0 / 2 hbar}
    //   / (2 (2 pi)^{1/4} sqrt(packet_width (e^{big} + 1)))
    prefactor.log_magnitude =
        0.5 * std::log(p.m * p.sigma) + p.d * p.d / (16.0 * s2) -
        std::log(2.0) - 0.25 * std::log(2.0 * std::numbers::pi) -
        0.5 * (std::log(std::abs(packet_width)) + big + std::log1p(std::exp(-big)));
    prefactor.phase =
        -p.d * p.m * p.v0 / (2.0 * p.hbar) - 0.5 * std::arg(packet_width);
  }
};

/// Appends log terms for e^{alpha^2} (1 + s*erf(alpha)), s = +-1, routed
/// through the scaled Faddeeva function so no intermediate overflows.
inline void bracket_log_terms(Complex alpha, double s, const LogComplexTerm& L,
                              std::vector<LogComplexTerm>& out) {
  const Complex ia(-alpha.imag(), alpha.real());
  const bool positive_re =
      alpha.real() > 0.0 || (alpha.real() == 0.0 && alpha.imag() >= 0.0);
  const Complex a2 = alpha * alpha;
  if ((s > 0.0) == positive_re) {
    // 2 e^{alpha^2} - w(+-i alpha)
    out.push_back({L.log_magnitude + a2.real() + std::log(2.0),
                   L.phase + a2.imag()});
    const Complex w = positive_re ? faddeeva_w(ia) : faddeeva_w(-ia);
    out.push_back({L.log_magnitude + std::log(std::abs(w)),
                   L.phase + std::arg(w) + std::numbers::pi});
  } else {
    // single scaled term: e^{alpha^2} erfc(-+alpha) = w(-+i alpha)
    const Complex w = positive_re ? faddeeva_w(ia) : faddeeva_w(-ia);
    out.push_back({L.log_magnitude + std::log(std::abs(w)), L.phase + std::arg(w)});
  }
}

inline Complex psi_lr_point(double x, double t, const PhysParams& p,
                            bool left) {
  const LRContext ctx(x, t, p);
  const double s = left ? 1.0 : -1.0;
  std::vector<LogComplexTerm> terms;
  terms.reserve(4);
  bracket_log_terms(ctx.alpha1, s, ctx.prefactor, terms);
  bracket_log_terms(ctx.alpha2, s, ctx.prefactor, terms);
  return sum_log_terms(terms).to_complex();
}

}  // namespace detail

inline Complex psi_left(double x, double t, const PhysParams& p) {
  return detail::psi_lr_point(x, t, p, true);
}

inline Complex psi_right(double x, double t, const PhysParams& p) {
  return detail::psi_lr_point(x, t, p, false);
}

/// Closed-form left/right split of the superposed wave function on a grid.
inline LRDecomposition lr_split(const Grid& grid, double t, const PhysParams& p) {
  validate_grid(grid);
  validate_params(p);
  if (!(p.d > 0.0)) throw std::invalid_argument("lr_split needs a superposition (d > 0)");
  Eigen::ArrayXcd l(grid.n_points), r(grid.n_points);
  for (Eigen::Index j = 0; j < grid.n_points; ++j) {
    l(j) = psi_left(grid.x(j), t, p);
    r(j) = psi_right(grid.x(j), t, p);
  }
  return {{grid, std::move(l)}, {grid, std::move(r)}, t, p};
}

/// Position diagonal of the reduced density operator:
/// |Psi_L|^2 + |Psi_R|^2 + 2 epsilon Re(Psi_L^* Psi_R).
inline double reduced_density_diagonal(double x, double t, const PhysParams& p,
                                       const OverlapParam& overlap) {
  validate_overlap(overlap);
  const Complex l = psi_left(x, t, p);
  const Complex r = psi_right(x, t, p);
  return std::norm(l) + std::norm(r) +
         2.0 * overlap.epsilon * (std::conj(l) * r).real();
}

/// The interference term 2 Re(Psi_L^* Psi_R) on a grid.
inline RealField interference_term(const Grid& grid, double t,
                                   const PhysParams& p) {
  validate_grid(grid);
  Eigen::ArrayXd out(grid.n_points);
  for (Eigen::Index j = 0; j < grid.n_points; ++j) {
    const Complex l = psi_left(grid.x(j), t, p);
    const Complex r = psi_right(grid.x(j), t, p);
    out(j) = 2.0 * (std::conj(l) * r).real();
  }
  return {grid, out};
}

}  // namespace qct
