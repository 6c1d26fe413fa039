#include "heleshaw/closed_form.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "heleshaw/errors.hpp"
#include "heleshaw/geometry.hpp"
#include "heleshaw/moments.hpp"

using namespace heleshaw;
using geometry::Complex;
using geometry::ConformalMap;
using geometry::UnivalenceVerdict;

namespace {

constexpr double kPi = std::numbers::pi;

// Equilibrium residual of a solution, relative to the report scale.
template <typename Solution>
double relative_residual(const Solution& sol, int n = 2048) {
  auto boundary = geometry::sample_boundary(sol.map, n);
  auto report = moments::check_equilibrium(boundary, sol.fieldspec,
                                           sol.singularities);
  return report.max_residual / report.scale;
}

bool geometric_univalent(const ConformalMap& map) {
  return geometry::check_univalence(map).univalent;
}

}  // namespace

TEST_CASE("pair solver satisfies its defining relations") {
  auto sol = closed_form::solve_source_sink_pair(1.0, 1.0, 4.0, 2.0);
  CHECK(sol.lambda == 1.0);
  CHECK(std::abs(sol.alpha - std::sqrt(1.0 / 3.0)) < 1e-15);

  // alpha also solves ln((1+a^2)/(1-a^2)) = (lambda/2) ln(b/a); find the
  // root independently by bisection.
  const double target = (sol.lambda / 2.0) * std::log(sol.b / sol.a);
  double lo = 1e-9, hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double h = std::log((1.0 + mid * mid) / (1.0 - mid * mid)) - target;
    (h < 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(sol.alpha - 0.5 * (lo + hi)) < 1e-12);

  // The map sends -+alpha to the singularity positions.
  CHECK(std::abs(sol.map.map(Complex(-sol.alpha)) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(sol.map.map(Complex(sol.alpha)) - Complex(4.0)) < 1e-12);

  CHECK(relative_residual(sol) < 1e-10);
  CHECK(moments::is_feasible(sol.fieldspec, sol.singularities));
  CHECK(sol.univalent);
  CHECK(geometric_univalent(sol.map));
}

TEST_CASE("pair solver handles fractional and negative exponents") {
  // lambda = 1/2.
  auto half = closed_form::solve_source_sink_pair(1.0, 1.0, 2.0, 1.0);
  CHECK(half.lambda == 0.5);
  CHECK(relative_residual(half) < 1e-10);
  CHECK(half.univalent);

  // Swapping the pair and flipping the rate describes the same physical
  // configuration with lambda < 0.
  auto flipped = closed_form::solve_source_sink_pair(-1.0, 4.0, 1.0, 2.0);
  CHECK(flipped.lambda == -1.0);
  CHECK(std::abs(flipped.map.map(Complex(flipped.alpha)) - Complex(1.0)) <
        1e-12);
  CHECK(std::abs(flipped.map.map(Complex(-flipped.alpha)) - Complex(4.0)) <
        1e-12);
  CHECK(relative_residual(flipped) < 1e-10);
  CHECK(flipped.univalent);
}

TEST_CASE("pair critical ratio has its closed-form values") {
  CHECK(std::abs(closed_form::source_sink_critical_ratio(0.25) - 0.0625) <
        1e-15);
  CHECK(std::abs(closed_form::source_sink_critical_ratio(1.0 / 3.0) -
                 0.015625) < 1e-15);
  CHECK(closed_form::source_sink_critical_ratio(0.5) == 0.0);
  CHECK(closed_form::source_sink_critical_ratio(2.0) == 0.0);
  CHECK(std::abs(closed_form::source_sink_critical_ratio(-0.25) - 0.0625) <
        1e-15);
  CHECK_THROWS_AS(closed_form::source_sink_critical_ratio(0.0), ConfigError);

  // The univalence flag flips across the threshold and the geometric
  // detector agrees on both sides. lambda = 1/4 via q = 2, Q = 1.
  auto above = closed_form::solve_source_sink_pair(2.0, 0.0635, 1.0, 1.0);
  CHECK(above.univalent);
  CHECK(geometric_univalent(above.map));
  auto below = closed_form::solve_source_sink_pair(2.0, 0.0615, 1.0, 1.0);
  CHECK(!below.univalent);
  CHECK(!geometric_univalent(below.map));
}

TEST_CASE("geometric bisection agrees with the pair threshold") {
  // At lambda = 1/4 sweep the inner position; the outer one is fixed at 1.
  const double crit = geometry::critical_parameter(
      [](double r) {
        return closed_form::solve_source_sink_pair(2.0, r, 1.0, 1.0).map;
      },
      0.02, 0.2, 1e-4);
  CHECK(std::abs(crit - 0.0625) < 1e-3);
}

TEST_CASE("pair solutions collapse to the dipole limit") {
  const double mu = 0.7, a = 1.2, Q = 1.1;

  auto map_distance = [](const ConformalMap& f, const ConformalMap& g) {
    double err = 0.0;
    for (int k = 0; k < 64; ++k) {
      const Complex zeta = std::polar(1.0, 2.0 * kPi * k / 64.0);
      err = std::max(err, std::abs(f.map(zeta) - g.map(zeta)));
    }
    return err;
  };

  // Convergence to the dipole solution is first order in the separation:
  // the prefactor matches the geometric-mean position while the exponent
  // rate matches the inner one, leaving an eps / 4 mismatch in the rate.
  for (const double eps : {1e-3, 1e-4, 1e-5}) {
    const double q = mu / (eps * a);
    const double b = a * std::exp(eps);
    auto pair = closed_form::solve_source_sink_pair(q, a, b, Q);
    auto dip = closed_form::solve_dipole(mu, std::sqrt(a * b), Q);
    CHECK(map_distance(pair.map, dip.map) < 1.5 * a * eps);
  }

  // Compensating that known rate mismatch exposes the next order: with
  // sigma matched exactly the maps agree to O(eps^2).
  const double eps = 1e-3;
  const double q = mu / (eps * a);
  const double b = a * std::exp(eps);
  auto pair = closed_form::solve_source_sink_pair(q, a, b, Q);
  const double amid = std::sqrt(a * b);
  const double sigma_eff = 2.0 * pair.alpha / pair.lambda;
  auto compensated =
      closed_form::solve_dipole(0.5 * sigma_eff * sigma_eff * amid * Q, amid, Q);
  CHECK(map_distance(pair.map, compensated.map) < 1e-6 * a);
}

TEST_CASE("dipole solution balances and knows its threshold") {
  auto sol = closed_form::solve_dipole(2.0, 1.0, 1.0);
  CHECK(sol.sigma == 2.0);
  CHECK(relative_residual(sol, 1024) < 1e-10);
  CHECK(sol.univalent);

  CHECK(std::abs(closed_form::dipole_critical_position(1.0, 1.0) -
                 0.2026423672846756) < 1e-15);

  const double astar = closed_form::dipole_critical_position(1.0, 1.0);
  auto wide = closed_form::solve_dipole(1.0, astar * 1.01, 1.0);
  CHECK(wide.univalent);
  CHECK(geometric_univalent(wide.map));
  auto tight = closed_form::solve_dipole(1.0, astar * 0.99, 1.0);
  CHECK(!tight.univalent);
  CHECK(!geometric_univalent(tight.map));
}

TEST_CASE("enclosed-charge dipole matches the area series") {
  auto sol = closed_form::solve_dipole_on_charge(0.15, 1.0, 1.0);
  CHECK(std::abs(sol.B - 0.3) < 1e-15);
  CHECK(relative_residual(sol, 1024) < 1e-10);

  // area = pi A^2 sum_m m B^(2(m-1)) / ((m-1)!)^2 from the power series of
  // A zeta e^(B zeta).
  double series = 0.0, fact = 1.0;
  for (int m = 1; m <= 40; ++m) {
    if (m > 1) fact *= (m - 1);
    series += m * std::pow(sol.B, 2 * (m - 1)) / (fact * fact);
  }
  const double expected = kPi * sol.A * sol.A * series;
  const double area =
      geometry::domain_area(geometry::sample_boundary(sol.map, 1024));
  CHECK(std::abs(area - expected) < 1e-12 * expected);

  CHECK(closed_form::dipole_on_charge_critical_scale(1.0, 1.0) == 2.0);
  auto wide = closed_form::solve_dipole_on_charge(1.0, 1.0, 2.1);
  CHECK(wide.univalent);
  CHECK(geometric_univalent(wide.map));
  auto tight = closed_form::solve_dipole_on_charge(1.0, 1.0, 1.9);
  CHECK(!tight.univalent);
  CHECK(!geometric_univalent(tight.map));

  // A negative moment only reflects the shape.
  auto mirrored = closed_form::solve_dipole_on_charge(-0.15, 1.0, 1.0);
  CHECK(mirrored.B == -0.3);
  CHECK(relative_residual(mirrored, 1024) < 1e-10);
  CHECK(mirrored.univalent);
}

TEST_CASE("quadrupole solution balances and knows its threshold") {
  auto sol = closed_form::solve_quadrupole(4.0, 1.0, 1.0);
  CHECK(sol.c == 2.0);
  CHECK(relative_residual(sol) < 1e-10);
  CHECK(sol.univalent);

  CHECK(std::abs(closed_form::quadrupole_critical_spacing(1.0, 1.0) -
                 0.3183098861837907) < 1e-15);

  auto wide = closed_form::solve_quadrupole(1.0, 1.0, 0.325);
  CHECK(wide.univalent);
  CHECK(geometric_univalent(wide.map));
  auto tight = closed_form::solve_quadrupole(1.0, 1.0, 0.313);
  CHECK(!tight.univalent);
  CHECK(!geometric_univalent(tight.map));
}

TEST_CASE("infeasible configurations are rejected") {
  CHECK_THROWS_AS(closed_form::solve_source_sink_pair(1.0, 4.0, 1.0, 2.0),
                  FeasibilityError);
  CHECK_THROWS_AS(closed_form::solve_dipole(-1.0, 1.0, 1.0),
                  FeasibilityError);
  CHECK_THROWS_AS(closed_form::solve_quadrupole(-1.0, 1.0, 1.0),
                  FeasibilityError);
  CHECK_THROWS_AS(closed_form::solve_source_sink_pair(1.0, 1.0, 1.0, 2.0),
                  ConfigError);
  CHECK_THROWS_AS(closed_form::solve_source_sink_pair(1.0, -1.0, 4.0, 2.0),
                  ConfigError);
  CHECK_THROWS_AS(closed_form::solve_dipole(1.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(closed_form::solve_dipole_on_charge(1.0, 1.0, 0.0),
                  ConfigError);
}
