#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qct/classical.hpp"
#include "qct/decoherence.hpp"
#include "qct/quantum.hpp"

using namespace qct;

TEST_CASE("overlap parameter bounds") {
  CHECK_NOTHROW(validate_overlap({0.0}));
  CHECK_NOTHROW(validate_overlap({-1.0}));
  CHECK_NOTHROW(validate_overlap({1.0}));
  CHECK_THROWS_AS(validate_overlap({1.5}), std::invalid_argument);
}

TEST_CASE("momentum amplitude is symmetric for the centered setup") {
  PhysParams p = paper_params();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double k = u(rng);
    CHECK(std::abs(momentum_amplitude(k, p)) ==
          doctest::Approx(std::abs(momentum_amplitude(-k, p))).epsilon(1e-12));
  }
}

TEST_CASE("momentum amplitude is normalized") {
  PhysParams p = paper_params();
  Grid g{-25.0, 25.0, 8001};
  Eigen::ArrayXd dens(g.n_points);
  for (Eigen::Index i = 0; i < g.n_points; ++i)
    dens(i) = std::norm(momentum_amplitude(g.x(i), p));
  CHECK(integrate_trapezoid({g, dens}) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("momentum amplitude matches a numeric transform of the initial state") {
  PhysParams p = paper_params();
  const WavePacketSpec sup{p, true};
  const Grid g{-25.0, 25.0, 16001};
  const Complex i(0.0, 1.0);
  auto numeric = [&](double mom) {
    Complex acc{};
    for (Eigen::Index j = 0; j < g.n_points; ++j) {
      const double x = g.x(j);
      const double w = (j == 0 || j == g.n_points - 1) ? 0.5 : 1.0;
      acc += w * psi0(x, sup) * std::exp(-i * (mom * x / p.hbar));
    }
    return acc * g.dx() / std::sqrt(2.0 * std::numbers::pi * p.hbar);
  };
  for (double mom : {p.m * p.v0, 0.5, -p.m * p.v0})
    CHECK(std::abs(momentum_amplitude(mom, p) - numeric(mom)) < 1e-8);
}

TEST_CASE("left and right parts rebuild the full density") {
  PhysParams p = paper_params();
  Grid g{-12.0, 12.0, 1201};
  const WavePacketSpec sup{p, true};
  for (double t : {0.2, 0.3, 0.4}) {
    LRDecomposition lr = lr_split(g, t, p);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < g.n_points; ++j) {
      const Complex full = lr.psi_l.values(j) + lr.psi_r.values(j);
      worst = std::max(worst, std::abs(std::norm(full) -
                                       density_superposed(g.x(j), t, sup)));
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("left and right parts mirror each other") {
  PhysParams p = paper_params();
  for (double t : {0.2, 0.3}) {
    for (double x : {-6.0, -1.5, 0.0, 0.8, 4.2}) {
      CHECK(std::abs(psi_left(x, t, p)) ==
            doctest::Approx(std::abs(psi_right(-x, t, p))).epsilon(1e-10));
    }
  }
}

TEST_CASE("one momentum component carries each packet at early times") {
  PhysParams p = paper_params();
  const WavePacketSpec sup{p, true};
  const double x = -p.d / 2.0, t = 1e-6;
  const double full = std::norm(psi0(x, sup));
  const double l = std::norm(psi_left(x, t, p));
  const double r = std::norm(psi_right(x, t, p));
  CHECK(std::max(l, r) == doctest::Approx(full).epsilon(1e-3));
  CHECK(std::min(l, r) < 1e-3 * full);
}

TEST_CASE("unit overlap reproduces the full quantum density") {
  PhysParams p = paper_params();
  for (double x : {-4.0, -0.3, 0.5, 2.0})
    CHECK(std::abs(reduced_density_diagonal(x, 0.3, p, {1.0}) -
                   density_superposed(x, 0.3, {p, true})) < 1e-7);
}

TEST_CASE("zero overlap lands near the classical mixture") {
  PhysParams p = paper_params();
  Grid g = default_grid();
  for (double t : {0.2, 0.3, 0.4}) {
    double l1 = 0.0;
    for (Eigen::Index j = 0; j < g.n_points; ++j)
      l1 += std::abs(reduced_density_diagonal(g.x(j), t, p, {0.0}) -
                     classical_density_superposed(g.x(j), t, p)) *
            g.dx();
    CHECK(l1 < 0.01);
  }
}

TEST_CASE("trace is preserved and the density stays non-negative") {
  PhysParams p = paper_params();
  Grid g = default_grid();
  for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    Eigen::ArrayXd dens(g.n_points);
    for (Eigen::Index j = 0; j < g.n_points; ++j)
      dens(j) = reduced_density_diagonal(g.x(j), 0.3, p, {eps});
    CHECK(integrate_trapezoid({g, dens}) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(dens.minCoeff() >= -1e-12);
  }
}

TEST_CASE("interference obeys the expansion of the full density") {
  PhysParams p = paper_params();
  Grid g{-10.0, 10.0, 2001};
  LRDecomposition lr = lr_split(g, 0.3, p);
  RealField interf = interference_term(g, 0.3, p);
  const WavePacketSpec sup{p, true};
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.n_points; ++j) {
    const double rebuilt = std::norm(lr.psi_l.values(j)) +
                           std::norm(lr.psi_r.values(j)) + interf.values(j);
    worst = std::max(worst,
                     std::abs(rebuilt - density_superposed(g.x(j), 0.3, sup)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("interference is negligible just after release") {
  PhysParams p = paper_params();
  Grid g{-15.0, 15.0, 1501};
  RealField interf = interference_term(g, 0.01, p);
  // the two tails meeting at x = 0 bound the term by O(e^{-d^2/8 sigma^2})
  CHECK(interf.values.abs().maxCoeff() < 1e-5);
}

TEST_CASE("left and right parts are orthogonal") {
  PhysParams p = paper_params();
  Grid g = default_grid();
  LRDecomposition lr = lr_split(g, 0.3, p);
  Complex acc{};
  for (Eigen::Index j = 0; j < g.n_points; ++j) {
    const double w = (j == 0 || j == g.n_points - 1) ? 0.5 : 1.0;
    acc += w * std::conj(lr.psi_l.values(j)) * lr.psi_r.values(j);
  }
  CHECK(std::abs(acc * g.dx()) < 1e-7);
}

TEST_CASE("the split requires a genuine superposition") {
  PhysParams p = paper_params();
  p.d = 0.0;
  CHECK_THROWS_AS(lr_split(default_grid(), 0.3, p), std::invalid_argument);
}
