#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "asymptopia/errors.hpp"
#include "asymptopia/quadrature.hpp"
#include "oracles.hpp"

using namespace asymptopia;

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  const Rule1D rule = gauss_legendre(8, 0.0, 2.0);
  for (int k = 0; k < 16; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
    CHECK(sum == doctest::Approx(std::pow(2.0, k + 1) / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("composite rule covers the interval") {
  const Rule1D rule = composite_gauss_legendre(5, 4, 1.0, 3.0);
  CHECK(rule.nodes.size() == 20);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("default grid reproduces the ball volume") {
  const GridPtr grid = build_grid(64, 26, 10.0);
  CHECK(grid->ball_volume_error() < 1e-10);
  std::vector<Complex> ones(grid->size(), 1.0);
  const Complex v = integrate(*grid, ones);
  CHECK(std::abs(v - 4.0 / 3.0 * kPi * 1000.0) / (4.0 / 3.0 * kPi * 1000.0) < 1e-10);
}

TEST_CASE("coarse grid is valid with a finite volume error") {
  const GridPtr grid = build_grid(4, 1, 1.0);
  CHECK(grid->size() > 0);
  CHECK(std::isfinite(grid->ball_volume_error()));
}

TEST_CASE("invalid grid parameters are configuration errors") {
  CHECK_THROWS_AS(build_grid(0, 26, 10.0), ConfigurationError);
  CHECK_THROWS_AS(build_grid(64, 0, 10.0), ConfigurationError);
  CHECK_THROWS_AS(build_grid(64, 26, 0.0), ConfigurationError);
  CHECK_THROWS_AS(build_grid(64, 26, -1.0), ConfigurationError);
}

TEST_CASE("integrate rejects a sample count mismatch") {
  const GridPtr grid = build_grid(8, 5, 1.0);
  std::vector<Complex> samples(grid->size() + 1, 1.0);
  CHECK_THROWS_AS(integrate(*grid, samples), UsageError);
}

TEST_CASE("Gaussian integral") {
  const GridPtr grid = build_grid(64, 26, 10.0);
  std::vector<Complex> s(grid->size());
  for (std::size_t i = 0; i < grid->n_radial(); ++i)
    for (std::size_t j = 0; j < grid->n_angular(); ++j) {
      const double r = grid->radial_nodes()[i];
      s[grid->index(i, j)] = std::exp(-0.5 * r * r);
    }
  const double exact = std::pow(2.0 * kPi, 1.5);
  CHECK(std::abs(integrate(*grid, s) - exact) / exact < 1e-8);
}

TEST_CASE("grid is closed under inversion") {
  const GridPtr grid = build_grid(16, 9, 3.0);
  for (std::size_t j = 0; j < grid->n_angular(); ++j) {
    const std::size_t k = grid->antipode(j);
    const Vec3 u = grid->angular_nodes()[j];
    const Vec3 v = grid->angular_nodes()[k];
    CHECK(u[0] == -v[0]);
    CHECK(u[1] == -v[1]);
    CHECK(u[2] == -v[2]);
    CHECK(grid->angular_weights()[j] == grid->angular_weights()[k]);
  }
}

TEST_CASE("odd samples integrate to zero and reflection leaves integrals unchanged") {
  const GridPtr grid = build_grid(32, 15, 6.0);
  oracle::Rng rng(11);
  std::vector<Complex> odd(grid->size()), s(grid->size()), reflected(grid->size());
  for (std::size_t k = 0; k < grid->size(); ++k) s[k] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  for (std::size_t k = 0; k < grid->size(); ++k) {
    reflected[k] = s[grid->antipode_index(k)];
    odd[k] = s[k] - s[grid->antipode_index(k)];
  }
  const Complex a = integrate(*grid, s);
  const Complex b = integrate(*grid, reflected);
  CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  CHECK(std::abs(integrate(*grid, odd)) < 1e-12 * 1e3);
}

TEST_CASE("integrate is linear") {
  const GridPtr grid = build_grid(16, 7, 2.0);
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> x(grid->size()), y(grid->size()), z(grid->size());
    const Complex a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    for (std::size_t k = 0; k < grid->size(); ++k) {
      x[k] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      y[k] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      z[k] = a * x[k] + y[k];
    }
    const Complex lhs = integrate(*grid, z);
    const Complex rhs = a * integrate(*grid, x) + integrate(*grid, y);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("refining the grid changes a smooth anisotropic integral by less than 1e-8") {
  const auto value = [](const GridPtr& grid) {
    std::vector<Complex> s(grid->size());
    for (std::size_t i = 0; i < grid->n_radial(); ++i)
      for (std::size_t j = 0; j < grid->n_angular(); ++j) {
        const Vec3 p = grid->momentum(i, j);
        s[grid->index(i, j)] = std::exp(-0.5 * dot(p, p)) * (1.0 + p[0] * p[1] + p[2] * p[2]);
      }
    return integrate(*grid, s);
  };
  const Complex coarse = value(build_grid(64, 26, 10.0));
  const Complex fine = value(build_grid(96, 34, 10.0));
  CHECK(std::abs(coarse - fine) / std::abs(fine) < 1e-8);
}

TEST_CASE("radial Fourier transform of zero is zero") {
  RadialFourier f([](double) { return 0.0; }, 1.0);
  for (double p : {0.0, 0.5, 3.0, 9.0}) CHECK(f(p) == 0.0);
}

TEST_CASE("radial Fourier transform of the ball indicator") {
  RadialFourier f([](double) { return 1.0; }, 1.0);
  for (double p = 0.0; p <= 5.0; p += 0.125) {
    const double exact = oracle::indicator_fourier(p);
    CHECK(std::abs(f(p) - exact) <= 1e-6 * std::abs(exact));
  }
  CHECK(f.total_integral() == doctest::Approx(4.0 / 3.0 * kPi).epsilon(1e-12));
  const GridPtr grid = build_grid(16, 5, 5.0);
  const std::vector<Complex> samples = radial_fourier([](double) { return 1.0; }, 1.0, *grid);
  for (std::size_t i = 0; i < grid->n_radial(); ++i) {
    const double exact = oracle::indicator_fourier(grid->radial_nodes()[i]);
    CHECK(std::abs(samples[grid->index(i, 0)].real() - exact) <= 1e-6 * std::abs(exact));
  }
}

TEST_CASE("radial Fourier transform is stable under panel refinement") {
  const auto bump = [](double r) { return r < 1.5 ? std::exp(-1.0 / (1.0 - r * r / 2.25)) : 0.0; };
  RadialFourier coarse(bump, 1.5, 200);
  RadialFourier fine(bump, 1.5, 400);
  for (double p = 0.0; p <= 10.0; p += 0.25) CHECK(std::abs(coarse(p) - fine(p)) < 1e-8);
}

TEST_CASE("radial Fourier transform rejects non-positive support") {
  CHECK_THROWS_AS(RadialFourier([](double) { return 1.0; }, 0.0), ConfigurationError);
  CHECK_THROWS_AS(RadialFourier([](double) { return 1.0; }, -2.0), ConfigurationError);
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-10) == doctest::Approx(1.0));
  CHECK(sinc(kPi) == doctest::Approx(0.0).epsilon(1e-15));
}
