#include "heleshaw/spectral.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "heleshaw/errors.hpp"

using namespace heleshaw;
using spectral::CircleGrid;
using spectral::Complex;
using spectral::FourierSeries;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("circle quadrature reproduces a residue integral") {
  // integral over the circle of 1/(2 - e^{i phi}) equals pi: single pole of
  // 1/(zeta (2 - zeta)) inside the contour.
  auto g = CircleGrid::sample(64, [](double phi) {
    return 1.0 / (2.0 - Complex(std::cos(phi), std::sin(phi)));
  });
  const Complex q = spectral::circle_quadrature(g);
  CHECK(std::abs(q - Complex(kPi, 0.0)) < 1e-13);
}

TEST_CASE("transform round trip reproduces node values") {
  auto g = CircleGrid::sample(256, [](double phi) {
    return Complex(std::exp(std::cos(phi)), std::sin(3.0 * phi));
  });
  FourierSeries c = spectral::fourier_coefficients(g);
  auto back = c.values_on_grid();
  double err = 0.0;
  for (int k = 0; k < g.n; ++k) err = std::max(err, std::abs(back[k] - g.values[k]));
  CHECK(err < 1e-12);
}

TEST_CASE("coefficients of an explicit Laurent polynomial") {
  auto g = CircleGrid::sample(64, [](double phi) {
    const Complex z(std::cos(phi), std::sin(phi));
    return z * z * z + 2.0 / z;
  });
  FourierSeries c = spectral::fourier_coefficients(g);
  CHECK(std::abs(c.at(3) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(c.at(-1) - Complex(2.0)) < 1e-14);
  double rest = 0.0;
  for (int j = -32; j < 32; ++j)
    if (j != 3 && j != -1) rest = std::max(rest, std::abs(c.at(j)));
  CHECK(rest < 1e-14);
}

TEST_CASE("series evaluation matches the sampled function off the grid") {
  auto fn = [](Complex z) { return 1.0 / (2.0 - z) + 0.5 / z; };
  auto g = CircleGrid::sample(128, [&](double phi) {
    return fn(Complex(std::cos(phi), std::sin(phi)));
  });
  FourierSeries c = spectral::fourier_coefficients(g);
  const Complex z = std::polar(1.0, 0.7123);
  CHECK(std::abs(c.eval(z) - fn(z)) < 1e-13);
  // d/dz of the same function: 1/(2-z)^2 - 0.5/z^2.
  const Complex d = 1.0 / ((2.0 - z) * (2.0 - z)) - 0.5 / (z * z);
  CHECK(std::abs(c.eval_derivative(z) - d) < 1e-12);
}

TEST_CASE("derivative in angle multiplies modes by i j") {
  auto g = CircleGrid::sample(64, [](double phi) {
    return Complex(std::cos(2.0 * phi), std::sin(phi));
  });
  FourierSeries d = spectral::fourier_coefficients(g).derivative_in_angle();
  auto vals = d.values_on_grid();
  double err = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const double phi = g.angle(k);
    const Complex want(-2.0 * std::sin(2.0 * phi), std::cos(phi));
    err = std::max(err, std::abs(vals[k] - want));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("analytic splitting separates inside and outside parts") {
  auto g = CircleGrid::sample(64, [](double phi) {
    const Complex z(std::cos(phi), std::sin(phi));
    return 3.0 + z * z + 5.0 / z;
  });
  auto p = spectral::cauchy_projection(g);
  CHECK(std::abs(p.plus.at(0) - Complex(1.5)) < 1e-14);
  CHECK(std::abs(p.plus.at(2) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(p.minus.at(0) - Complex(1.5)) < 1e-14);
  CHECK(std::abs(p.minus.at(-1) - Complex(5.0)) < 1e-14);
  CHECK_FALSE(p.resolution_warning);
  // The two parts sum back to the data on the grid.
  auto vp = p.plus.values_on_grid();
  auto vm = p.minus.values_on_grid();
  double err = 0.0;
  for (int k = 0; k < g.n; ++k)
    err = std::max(err, std::abs(vp[k] + vm[k] - g.values[k]));
  CHECK(err < 1e-13);
}

TEST_CASE("unresolved data trips the resolution warning") {
  const int n = 64;
  auto g = CircleGrid::sample(n, [&](double phi) {
    return Complex(std::cos(n / 2 * phi), 0.0);
  });
  CHECK(spectral::cauchy_projection(g).resolution_warning);
}

TEST_CASE("coefficients of analytic data are stable under grid doubling") {
  auto fn = [](double phi) {
    return 1.0 / (2.0 - Complex(std::cos(phi), std::sin(phi)));
  };
  FourierSeries a = spectral::fourier_coefficients(CircleGrid::sample(64, fn));
  FourierSeries b = spectral::fourier_coefficients(CircleGrid::sample(128, fn));
  // Slots near the coarse grid's Nyquist index hold its aliasing error, so
  // compare away from them.
  double err = 0.0;
  for (int j = -8; j < 32; ++j) err = std::max(err, std::abs(a.at(j) - b.at(j)));
  CHECK(err < 1e-14);
}

TEST_CASE("real samples give conjugate-symmetric coefficients") {
  auto g = CircleGrid::sample(128, [](double phi) {
    return Complex(std::exp(std::cos(phi)) * std::cos(std::sin(phi)), 0.0);
  });
  FourierSeries c = spectral::fourier_coefficients(g);
  double err = 0.0;
  for (int j = 1; j < 64; ++j)
    err = std::max(err, std::abs(c.at(j) - std::conj(c.at(-j))));
  CHECK(err < 1e-14);
}

TEST_CASE("resampling pads with zeros and drops only negligible tails") {
  auto g = CircleGrid::sample(64, [](double phi) {
    const Complex z(std::cos(phi), std::sin(phi));
    return 1.0 + 0.25 * z;
  });
  FourierSeries c = spectral::fourier_coefficients(g);
  FourierSeries up = c.resampled(256);
  CHECK(up.size() == 256);
  CHECK(std::abs(up.at(1) - Complex(0.25)) < 1e-15);
  FourierSeries down = up.resampled(64);
  CHECK(std::abs(down.at(1) - Complex(0.25)) < 1e-15);
  // Truncation that would discard real content must refuse.
  auto h = CircleGrid::sample(256, [](double phi) {
    return Complex(std::cos(100.0 * phi), 0.0);
  });
  FourierSeries busy = spectral::fourier_coefficients(h);
  CHECK_THROWS_AS((void)busy.resampled(64), AnalyticityError);
}

TEST_CASE("quadrature nodes integrate polynomials exactly") {
  auto r = spectral::gauss_legendre(5, 0.0, 1.0);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += r.weights[i] * std::pow(r.nodes[i], 9);
  CHECK(s == doctest::Approx(0.1).epsilon(1e-14));
  auto rs = spectral::gauss_legendre(40, 0.0, kPi);
  double t = 0.0;
  for (int i = 0; i < 40; ++i) t += rs.weights[i] * std::sin(rs.nodes[i]);
  CHECK(t == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scalar root finder meets its residual contract") {
  const double x = spectral::find_root_1d([](double t) { return std::cos(t); }, 1.0, 2.0);
  CHECK(std::abs(std::cos(x)) <= 1e-12);
  CHECK(x == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(
      (void)spectral::find_root_1d([](double t) { return 1.0 + t * t; }, 0.0, 1.0),
      BracketError);
}

TEST_CASE("two dimensional Newton solves a circle-line system") {
  auto fn = [](double x, double y) {
    return std::array<double, 2>{x * x + y * y - 2.0, x - y};
  };
  auto r = spectral::find_root_2d(fn, 2.0, 0.5);
  CHECK(std::abs(r.x - 1.0) < 1e-9);
  CHECK(std::abs(r.y - 1.0) < 1e-9);
  CHECK(r.residual_norm <= 1e-10);
  auto bad = [](double, double) { return std::array<double, 2>{1.0, 1.0}; };
  CHECK_THROWS_AS((void)spectral::find_root_2d(bad, 0.0, 0.0), ConvergenceError);
}

TEST_CASE("grid construction validates its size") {
  CHECK_THROWS_AS((void)CircleGrid::sample(100, [](double) { return Complex(0.0); }),
                  ConfigError);
  CHECK_THROWS_AS((void)CircleGrid::sample(32, [](double) { return Complex(0.0); }),
                  ConfigError);
  CHECK(spectral::is_valid_grid_size(2048));
  CHECK_FALSE(spectral::is_valid_grid_size(3000));
}
