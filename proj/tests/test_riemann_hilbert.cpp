#include "heleshaw/riemann_hilbert.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "heleshaw/errors.hpp"
#include "heleshaw/field.hpp"
#include "heleshaw/geometry.hpp"
#include "heleshaw/moments.hpp"

using namespace heleshaw;
using geometry::Complex;
using field::MonotoneProfile;

namespace {

constexpr double kPi = std::numbers::pi;

double map_distance(const geometry::ConformalMap& f,
                    const std::function<Complex(Complex)>& g, int n = 128) {
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex zeta = std::polar(1.0, 2.0 * kPi * k / n);
    err = std::max(err, std::abs(f.map(zeta) - g(zeta)));
  }
  return err;
}

double equilibrium_residual(const rh::RHSolution& sol) {
  // Sample at the solver's own grid so slowly decaying tails survive.
  auto boundary = geometry::sample_boundary(sol.map, sol.grid);
  auto report = moments::check_equilibrium(boundary, sol.fieldspec,
                                           sol.singularities);
  return report.max_residual / report.scale;
}

}  // namespace

TEST_CASE("flat-profile channel data produces a disk") {
  // With H the identity the additive problem is already solved by
  // f = beta + 2 alpha zeta, a disk centered on beta.
  const double alpha = 0.4, beta = 1.5;
  auto sol = rh::unidirectional_from_parameters(MonotoneProfile::identity(),
                                                alpha, beta);
  CHECK(map_distance(sol.map, [&](Complex zeta) {
          return Complex(beta) + 2.0 * alpha * zeta;
        }) < 1e-12);
  CHECK(sol.position == doctest::Approx(beta).epsilon(1e-12));
  CHECK(sol.mu_parameter == doctest::Approx(2.0 * alpha * alpha).epsilon(1e-12));
  CHECK(sol.grid == 2048);
  CHECK(!sol.resolution_limited);
  CHECK(sol.boundary_residual < 1e-12);

  // The physical moment of a disk held in G = Re z is the disk area:
  // J[z] = -i oint Re(z) dz = pi r^2 with r = 2 alpha.
  CHECK(sol.moment() ==
        doctest::Approx(kPi * 4.0 * alpha * alpha).epsilon(1e-12));
  CHECK(equilibrium_residual(sol) < 1e-8);
}

TEST_CASE("quadratic-profile channel matches frozen forward values") {
  // Marginal data beta = 2 alpha: the data is 2 sqrt(alpha) cos(phi / 2)
  // on the half period, with closed-form moments 4 sqrt(alpha) / pi and
  // 8 sqrt(alpha) / (3 pi).
  const auto fv =
      rh::unidirectional_forward(MonotoneProfile::square(), 1.0, 2.0);
  CHECK(std::abs(fv.position - 4.0 / kPi) < 1e-10);
  CHECK(std::abs(fv.fprime0 - 8.0 / (3.0 * kPi)) < 1e-10);

  auto sol = rh::unidirectional_from_parameters(MonotoneProfile::square(),
                                                1.0, 2.0);
  CHECK(std::abs(sol.position - 4.0 / kPi) < 1e-10);
  CHECK(std::abs(sol.mu_parameter - 8.0 / (3.0 * kPi)) < 1e-10);
  // The periodic kink in the data makes the tail decay like 1/k^2, so
  // the solver escalates until the Nyquist coefficient drops under the
  // relative gate.  That happens two doublings up from the default.
  CHECK(sol.grid == 16384);
  CHECK(!sol.resolution_limited);
  // The truncated series still honors the boundary condition at nodes.
  CHECK(sol.boundary_residual < 1e-7);
  CHECK(equilibrium_residual(sol) < 1e-8);

  // The map's own series agrees with the quadrature values.
  CHECK(std::abs(sol.map.map(Complex(0.0)).real() - 4.0 / kPi) < 1e-8);
}

TEST_CASE("smooth channel data stays on the requested grid") {
  auto sol = rh::unidirectional_from_parameters(MonotoneProfile::square(),
                                                1.0, 2.5);
  CHECK(sol.grid == 2048);
  CHECK(sol.boundary_residual < 1e-10);
  CHECK(equilibrium_residual(sol) < 1e-8);
}

TEST_CASE("radial solutions factor through a closed form") {
  // For H identity the data factorizes as
  // Theta = A (1 + t e^{i phi}) (1 + t e^{-i phi}), so f = sqrt(A) (1 + t zeta).
  const double alpha = 0.3, beta = 1.0;
  const double A = 0.5 * (beta + std::sqrt(beta * beta - 4 * alpha * alpha));
  const double t = alpha / A;
  auto sol = rh::axisymmetric_from_parameters(MonotoneProfile::identity(),
                                              alpha, beta);
  CHECK(map_distance(sol.map, [&](Complex zeta) {
          return std::sqrt(A) * (1.0 + t * zeta);
        }) < 1e-12);
  CHECK(sol.position == doctest::Approx(std::sqrt(A)).epsilon(1e-12));
  CHECK(sol.mu_parameter ==
        doctest::Approx(alpha * std::sqrt(A) * t).epsilon(1e-12));
  CHECK(sol.boundary_residual < 1e-12);
  CHECK(equilibrium_residual(sol) < 1e-8);

  // Quadratic profile: the log data halves again, giving the square-root
  // of the same factor.
  auto sq = rh::axisymmetric_from_parameters(MonotoneProfile::square(),
                                             alpha, beta);
  const double A4 = std::pow(A, 0.25);
  CHECK(map_distance(sq.map, [&](Complex zeta) {
          return A4 * std::sqrt(1.0 + t * zeta);
        }) < 1e-12);
  CHECK(sq.position == doctest::Approx(A4).epsilon(1e-12));
  CHECK(equilibrium_residual(sq) < 1e-8);
}

TEST_CASE("radial data must stay positive") {
  CHECK_THROWS_AS(rh::axisymmetric_from_parameters(
                      MonotoneProfile::identity(), 0.5, 1.0),
                  InvalidParameters);
  CHECK_THROWS_AS(rh::axisymmetric_from_parameters(
                      MonotoneProfile::identity(), -0.1, 1.0),
                  InvalidParameters);
  // Quadratic profile cannot take negative data at all.
  CHECK_THROWS_AS(rh::unidirectional_from_parameters(
                      MonotoneProfile::square(), 1.0, 1.0),
                  InvalidParameters);
}

TEST_CASE("composed solutions are square roots of the additive ones") {
  const double alpha = 0.3, beta = 1.0;
  auto sol = rh::composed_from_parameters(MonotoneProfile::identity(),
                                          alpha, beta);
  CHECK(map_distance(sol.map, [&](Complex zeta) {
          return std::sqrt(2.0 * (beta + 2.0 * alpha * zeta));
        }) < 1e-12);
  CHECK(sol.position == doctest::Approx(std::sqrt(2.0 * beta)).epsilon(1e-12));
  CHECK(sol.mu_parameter ==
        doctest::Approx(alpha * 2.0 * alpha / std::sqrt(2.0 * beta))
            .epsilon(1e-12));
  CHECK(sol.boundary_residual < 1e-11);
  CHECK(equilibrium_residual(sol) < 1e-8);

  // Data dipping below zero would push the square root across its branch.
  CHECK_THROWS_AS(rh::composed_from_parameters(MonotoneProfile::identity(),
                                               0.4, -1.0),
                  InvalidParameters);
}

TEST_CASE("inverse solvers recover forward parameters") {
  struct Case {
    const char* name;
    MonotoneProfile profile;
    double alpha, beta;
    rh::RHSolution (*fwd)(const MonotoneProfile&, double, double, int);
    rh::RHSolution (*inv)(const MonotoneProfile&, double, double, int);
  };
  const Case cases[] = {
      {"channel", MonotoneProfile::square(), 0.7, 1.9,
       rh::unidirectional_from_parameters, rh::solve_unidirectional},
      {"radial", MonotoneProfile::identity(), 0.3, 1.0,
       rh::axisymmetric_from_parameters, rh::solve_axisymmetric},
      {"radial quadratic", MonotoneProfile::square(), 0.3, 1.0,
       rh::axisymmetric_from_parameters, rh::solve_axisymmetric},
      {"composed", MonotoneProfile::identity(), 0.3, 1.0,
       rh::composed_from_parameters, rh::solve_composed}};

  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto truth = c.fwd(c.profile, c.alpha, c.beta, 2048);
    auto recovered = c.inv(c.profile, truth.position, truth.moment(), 2048);
    CHECK(std::abs(recovered.alpha - c.alpha) < 1e-8);
    CHECK(std::abs(recovered.beta - c.beta) < 1e-8);
    CHECK(equilibrium_residual(recovered) < 1e-8);
  }
}

TEST_CASE("invalid targets and parameters are rejected") {
  CHECK_THROWS_AS(rh::solve_unidirectional(MonotoneProfile::square(),
                                           -1.0, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(rh::unidirectional_from_parameters(
                      MonotoneProfile::square(), 0.0, 1.0),
                  InvalidParameters);
}
