#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qct/classical.hpp"
#include "qct/quantum.hpp"

using namespace qct;

namespace {

PhysParams params_for_hbar(double hbar) { return paper_params(hbar); }

Eigen::ArrayXd grid_density(const Grid& g, auto&& fn) {
  Eigen::ArrayXd out(g.n_points);
  for (Eigen::Index i = 0; i < g.n_points; ++i) out(i) = fn(g.x(i));
  return out;
}

int zero_crossings(const Grid& g, const Eigen::ArrayXd& f) {
  int n = 0;
  for (Eigen::Index i = 1; i < f.size(); ++i)
    if ((f(i - 1) < 0.0) != (f(i) < 0.0)) ++n;
  return n;
}

}  // namespace

TEST_CASE("initial amplitude: single-packet peak and superposed norm") {
  PhysParams p = paper_params();
  const WavePacketSpec single{p, false};
  CHECK(std::norm(psi0(p.x0, single)) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * p.sigma * p.sigma))
            .epsilon(1e-14));

  const WavePacketSpec sup{p, true};
  Grid g = default_grid();
  Eigen::ArrayXd dens =
      grid_density(g, [&](double x) { return std::norm(psi0(x, sup)); });
  CHECK(integrate_trapezoid({g, dens}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("superposed density at t = 0 equals |psi0|^2") {
  PhysParams p = paper_params();
  const WavePacketSpec sup{p, true};
  Grid g = default_grid();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    worst = std::max(worst, std::abs(std::norm(psi0(x, sup)) -
                                     density_superposed(x, 0.0, sup)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("single-packet density: spread and peak at t = 2") {
  PhysParams p = paper_params();
  CHECK(quantum_variance(2.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(density_single(p.x0 + p.v0 * 2.0, 2.0, {p, false}) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi))
            .epsilon(1e-14));
}

TEST_CASE("quantum and classical single-packet densities coincide under the spread map") {
  Grid g = default_grid();
  for (double hbar : {0.5, 1.0, 2.0}) {
    PhysParams p = params_for_hbar(hbar);
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      double worst = 0.0;
      for (Eigen::Index i = 0; i < g.n_points; ++i) {
        const double x = g.x(i);
        worst = std::max(worst, std::abs(density_single(x, t, {p, false}) -
                                         classical_density_single(x, t, p)));
      }
      CHECK(worst < 1e-14);
    }
  }
}

TEST_CASE("superposed density reference value") {
  PhysParams p = paper_params();
  CHECK(density_superposed(0.5, 0.3, {p, true}) ==
        doctest::Approx(0.0378736).epsilon(2e-5));
  CHECK(density_superposed(0.5, 0.3, {p, true}) ==
        doctest::Approx(0.03787360505).epsilon(1e-9));
}

TEST_CASE("superposed density stays normalized and non-negative") {
  Grid g = default_grid();
  for (double hbar : {0.5, 1.0, 2.0}) {
    PhysParams p = params_for_hbar(hbar);
    const WavePacketSpec sup{p, true};
    for (double t : {0.25, 0.35, 0.5, 0.75}) {
      Eigen::ArrayXd dens =
          grid_density(g, [&](double x) { return density_superposed(x, t, sup); });
      CHECK(integrate_trapezoid({g, dens}) ==
            doctest::Approx(1.0).epsilon(1e-10));
      CHECK(dens.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("propagator quadrature reproduces the single-packet closed form") {
  PhysParams p = paper_params();
  const WavePacketSpec single{p, false};
  Grid g{-20.0, 25.0, 901};
  ComplexField psi = propagate_quadrature(single, 0.5, g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.n_points; ++i)
    worst = std::max(worst, std::abs(std::norm(psi.values(i)) -
                                     density_single(g.x(i), 0.5, single)));
  CHECK(worst < 1e-7);
}

TEST_CASE("propagator quadrature reproduces the superposed closed form") {
  PhysParams p = paper_params();
  const WavePacketSpec sup{p, true};
  Grid g{-15.0, 15.0, 901};
  ComplexField psi = propagate_quadrature(sup, 0.3, g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.n_points; ++i)
    worst = std::max(worst, std::abs(std::norm(psi.values(i)) -
                                     density_superposed(g.x(i), 0.3, sup)));
  CHECK(worst < 1e-7);
}

TEST_CASE("propagator output has even parity for a resting centered packet") {
  PhysParams p = paper_params();
  p.v0 = 0.0;
  p.x0 = 0.0;
  Grid g{-10.0, 10.0, 401};  // symmetric grid, x(i) = -x(n-1-i)
  ComplexField psi = propagate_quadrature({p, false}, 0.4, g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.n_points; ++i)
    worst = std::max(worst,
                     std::abs(psi.values(i) - psi.values(g.n_points - 1 - i)));
  CHECK(worst < 1e-10);
}

TEST_CASE("propagator quadrature rejects t <= 0") {
  CHECK_THROWS_AS(propagate_quadrature({paper_params(), false}, 0.0,
                                       {-5.0, 5.0, 11}),
                  std::invalid_argument);
}

TEST_CASE("interference gets finer as hbar decreases") {
  Grid g{-5.0, 5.0, 4001};
  auto crossings = [&](double hbar) {
    PhysParams p = params_for_hbar(hbar);
    Eigen::ArrayXd diff = grid_density(g, [&](double x) {
      return density_superposed(x, 0.5, {p, true}) -
             classical_density_superposed(x, 0.5, p);
    });
    return zero_crossings(g, diff);
  };
  CHECK(crossings(0.5) > crossings(2.0));
}
