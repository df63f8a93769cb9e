#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qct {

/// Full parameter set shared by the classical, quantum, filter and
/// decoherence formulas. All quantities are dimensionless doubles in
/// natural units.
struct PhysParams {
  double m = 1.0;        // mass
  double hbar = 1.0;     // reduced Planck constant
  double sigma = 1.0;    // quantum packet width
  double sigma_x = 1.0;  // classical position spread
  double sigma_v = 0.5;  // classical velocity spread
  double x0 = 0.0;       // mean initial position
  double v0 = 10.0;      // mean initial speed
  double d = 10.0;       // peak separation
};

/// sigma_x and sigma_v that make the classical convolution density
/// identical to the quantum single-packet density.
inline std::pair<double, double> correspondence(double sigma, double m,
                                                double hbar) {
  if (!(sigma > 0.0) || !(m > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("correspondence: sigma, m, hbar must be positive");
  return {sigma, hbar / (2.0 * sigma * m)};
}

/// Paper defaults: hbar = sigma = m = 1, d = v0 = 10, spreads tied by the
/// correspondence map.
inline PhysParams paper_params(double hbar = 1.0) {
  PhysParams p;
  p.hbar = hbar;
  auto [sx, sv] = correspondence(p.sigma, p.m, hbar);
  p.sigma_x = sx;
  p.sigma_v = sv;
  return p;
}

inline PhysParams validate_params(const PhysParams& p) {
  if (!(p.m > 0.0)) throw std::invalid_argument("m must be positive");
  if (!(p.hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(p.sigma_x > 0.0)) throw std::invalid_argument("sigma_x must be positive");
  if (!(p.sigma_v > 0.0)) throw std::invalid_argument("sigma_v must be positive");
  if (!(p.d >= 0.0)) throw std::invalid_argument("d must be non-negative");
  return p;
}

/// Uniform 1-D sampling domain.
struct Grid {
  double x_min = -25.0;
  double x_max = 25.0;
  Eigen::Index n_points = 8192;

  double dx() const { return (x_max - x_min) / double(n_points - 1); }
  double x(Eigen::Index i) const { return x_min + double(i) * dx(); }

  Eigen::ArrayXd points() const {
    return Eigen::ArrayXd::LinSpaced(n_points, x_min, x_max);
  }
};

inline Grid validate_grid(const Grid& g) {
  if (g.n_points < 2) throw std::invalid_argument("grid needs n_points >= 2");
  if (!(g.x_max > g.x_min)) throw std::invalid_argument("grid needs x_max > x_min");
  return g;
}

/// Default domain for the figure reproductions: densities are below 1e-30
/// at |x| = 25 for the paper parameters, and 8192 is FFT-friendly.
inline Grid default_grid() { return Grid{}; }

struct RealField {
  Grid grid;
  Eigen::ArrayXd values;
};

struct ComplexField {
  Grid grid;
  Eigen::ArrayXcd values;
};

inline double integrate_trapezoid(const RealField& f) {
  const Eigen::Index n = f.values.size();
  if (n != f.grid.n_points)
    throw std::invalid_argument("field length does not match grid");
  if (n < 2) return 0.0;
  double interior = f.values.segment(1, n - 2).sum();
  return f.grid.dx() * (0.5 * (f.values(0) + f.values(n - 1)) + interior);
}

}  // namespace qct
