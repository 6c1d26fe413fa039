#include "heleshaw/gravity.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "heleshaw/errors.hpp"

using namespace heleshaw;
using gravity::CauchyTransform;
using gravity::Complex;
using gravity::GravityScenario;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: the exterior transform of a disk, evaluated as the
// boundary integral (1 / 2 pi i) oint conj(z) / (w - z) dz with the
// trapezoid rule.  Spectrally accurate for w outside the disk.
Complex disk_transform_by_quadrature(Complex center, double radius,
                                     Complex w, int n = 512) {
  Complex sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n;
    const Complex e = std::polar(1.0, phi);
    const Complex z = center + radius * e;
    const Complex dz = Complex(0.0, 1.0) * radius * e;
    sum += std::conj(z) / (w - z) * dz;
  }
  sum *= Complex(0.0, -1.0) / (2.0 * kPi) * (2.0 * kPi / n);
  return sum;
}

}  // namespace

TEST_CASE("disk transforms match a boundary integral") {
  auto unit = gravity::transform_of_disk(Complex(0.0), 1.0);
  REQUIRE(unit.poles.size() == 1);
  CHECK(unit.poles[0].residue == Complex(1.0));
  for (Complex w : {Complex(2.0, 0.5), Complex(-1.7, 1.1), Complex(0.0, 3.0)}) {
    CHECK(std::abs(unit.eval(w) - disk_transform_by_quadrature(
                                      Complex(0.0), 1.0, w)) < 1e-12);
  }

  // Off-center disk: coefficient is radius squared, pole at the center.
  auto blob = gravity::transform_of_disk(Complex(2.0, -1.0), 1.5 * 1.5);
  for (Complex w : {Complex(5.0, 0.0), Complex(2.0, 2.0)}) {
    CHECK(std::abs(blob.eval(w) - disk_transform_by_quadrature(
                                      Complex(2.0, -1.0), 1.5, w)) < 1e-12);
  }
  CHECK(std::abs(blob.eval(Complex(5.0)) - 2.25 / Complex(3.0, 1.0)) < 1e-15);

  auto back = gravity::disk_of_transform(blob);
  CHECK(back.center == Complex(2.0, -1.0));
  CHECK(back.coefficient == 2.25);

  CHECK(gravity::transform_of_disk(Complex(0.0), 0.0).poles.empty());
  CHECK(gravity::disk_of_transform(CauchyTransform{}).coefficient == 0.0);

  CauchyTransform two;
  two.poles = {{Complex(1.0), Complex(0.0)}, {Complex(1.0), Complex(3.0)}};
  CHECK_THROWS_AS(gravity::disk_of_transform(two), GeometryError);
  CHECK_THROWS_AS(gravity::transform_of_disk(Complex(0.0), -1.0), ConfigError);
}

TEST_CASE("sourceless evolution is a pure translation") {
  auto sc = GravityScenario::with_sources(
      2.0, gravity::transform_of_disk(Complex(1.0, 1.0), 3.0), {});
  auto chi = gravity::evolve_transform(sc, 0.5);
  REQUIRE(chi.poles.size() == 1);
  CHECK(chi.poles[0].residue == Complex(3.0));
  CHECK(chi.poles[0].pole == Complex(1.0, 1.0) + Complex(-1.0));
  CHECK(chi.logs.empty());

  // t = 0 hands back the initial transform unchanged.
  auto chi0 = gravity::evolve_transform(sc, 0.0);
  REQUIRE(chi0.poles.size() == 1);
  CHECK(chi0.poles[0].residue == sc.initial.poles[0].residue);
  CHECK(chi0.poles[0].pole == sc.initial.poles[0].pole);
}

TEST_CASE("dipole evolution matches its closed form bitwise") {
  const double A = 3.7, mu = 1.3, C = 0.9;
  auto sc = GravityScenario::with_dipole(C, A, mu);

  for (int k = 0; k < 100; ++k) {
    const double t = 0.0137 * (k + 1);
    auto chi = gravity::evolve_transform(sc, t);
    REQUIRE(chi.poles.size() == 2);
    CHECK(chi.poles[0].residue == Complex(mu / C));
    CHECK(chi.poles[0].pole == Complex(0.0));
    CHECK(chi.poles[1].residue == Complex(A - mu / C));
    CHECK(chi.poles[1].pole == Complex(-(C * t)));
    CHECK(chi.logs.empty());
  }

  auto chi0 = gravity::evolve_transform(sc, 0.0);
  REQUIRE(chi0.poles.size() == 1);
  CHECK(chi0.poles[0].residue == Complex(A));
  CHECK(chi0.poles[0].pole == Complex(0.0));
}

TEST_CASE("split parts sum to the evolution exactly") {
  const double A = 3.7, mu = 1.3, C = 0.9;
  auto sc = GravityScenario::with_dipole(C, A, mu);

  for (int k = 0; k < 100; ++k) {
    const double t = 0.02 * (k + 1);
    auto whole = gravity::evolve_transform(sc, t);
    auto parts = gravity::split_decomposition(sc, t);
    CHECK(parts.physical);
    REQUIRE(parts.stationary.poles.size() == 1);
    CHECK(parts.stationary.poles[0].residue == Complex(mu / C));
    REQUIRE(parts.sinking.poles.size() == 1);
    CHECK(parts.sinking.poles[0].residue == Complex(A - mu / C));

    auto sum = gravity::add(parts.stationary, parts.sinking);
    REQUIRE(sum.poles.size() == whole.poles.size());
    for (size_t i = 0; i < sum.poles.size(); ++i) {
      CHECK(sum.poles[i].residue == whole.poles[i].residue);
      CHECK(sum.poles[i].pole == whole.poles[i].pole);
    }
  }
}

TEST_CASE("split flags the degenerate and unphysical cases") {
  // Initial blob exactly the steady one: nothing is left to sink.
  auto balanced = GravityScenario::with_dipole(0.5, 4.0, 2.0);
  auto parts = gravity::split_decomposition(balanced, 1.0);
  CHECK(parts.physical);
  CHECK(parts.sinking.poles.empty());

  // Initial blob smaller than the steady one: the leftover residue would
  // be negative, which no fluid region realizes.
  auto starved = GravityScenario::with_dipole(0.5, 1.0, 2.0);
  auto bad = gravity::split_decomposition(starved, 1.0);
  CHECK(!bad.physical);
  CHECK(bad.sinking.poles.size() == 1);
  CHECK(bad.sinking.poles[0].residue.real() < 0.0);
}

TEST_CASE("source wakes carry the injected area") {
  auto initial = gravity::transform_of_disk(Complex(0.0), 2.0);

  // Balanced pair: the wake pairs cancel at infinity and the area
  // coefficient stays put.
  auto balanced = GravityScenario::with_sources(
      1.5, initial, {{2.0, Complex(3.0, 0.0)}, {-2.0, Complex(-3.0, 0.0)}});
  for (double t : {0.3, 1.0, 2.7}) {
    auto chi = gravity::evolve_transform(balanced, t);
    CHECK(chi.logs.size() == 4);
    CHECK(std::abs(chi.area_coefficient() - Complex(2.0)) < 1e-12);
  }

  // Lone source: area grows at q t / pi on top of the initial blob.
  auto fed = GravityScenario::with_sources(1.5, initial,
                                           {{2.0, Complex(3.0, 0.0)}});
  for (double t : {0.5, 2.0}) {
    auto chi = gravity::evolve_transform(fed, t);
    CHECK(std::abs(chi.area_coefficient() - Complex(2.0 + 2.0 * t / kPi)) <
          1e-12);
  }

  // Pointwise value agrees with the hand-written formula.
  {
    const double t = 0.8, C = 1.5, q = 2.0;
    const Complex z1(3.0, 0.0), w(6.0, 2.0);
    auto chi = gravity::evolve_transform(fed, t);
    const Complex expect =
        2.0 / (w + Complex(C * t)) +
        q / (kPi * C) * (std::log(w + C * t - z1) - std::log(w - z1));
    CHECK(std::abs(chi.eval(w) - expect) < 1e-14);
  }
}

TEST_CASE("evolution commutes with translating the whole picture") {
  const Complex d(0.7, 0.4);
  auto base = GravityScenario::with_sources(
      1.1, gravity::transform_of_disk(Complex(0.5, -0.2), 1.7),
      {{1.0, Complex(2.0, 1.0)}, {-1.0, Complex(-2.0, 1.0)}});
  auto shifted = GravityScenario::with_sources(
      1.1, base.initial.translated(d),
      {{1.0, Complex(2.0, 1.0) + d}, {-1.0, Complex(-2.0, 1.0) + d}});

  for (double t : {0.4, 1.9}) {
    auto a = gravity::evolve_transform(shifted, t);
    auto b = gravity::evolve_transform(base, t).translated(d);
    for (Complex w : {Complex(8.0, 3.0), Complex(-5.0, -4.0)}) {
      CHECK(std::abs(a.eval(w) - b.eval(w)) < 1e-13);
    }
    CHECK(std::abs(a.area_coefficient() - b.area_coefficient()) < 1e-13);
  }
}

TEST_CASE("malformed gravity requests are rejected") {
  CHECK_THROWS_AS(GravityScenario::with_dipole(0.0, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(GravityScenario::with_dipole(1.0, -1.0, 1.0), ConfigError);

  auto sc = GravityScenario::with_dipole(1.0, 2.0, 1.0);
  CHECK_THROWS_AS(gravity::evolve_transform(sc, -0.1), DomainError);

  auto srcs = GravityScenario::with_sources(
      1.0, gravity::transform_of_disk(Complex(0.0), 1.0), {});
  CHECK_THROWS_AS(gravity::split_decomposition(srcs, 1.0),
                  UnsupportedScenario);

  CauchyTransform with_log;
  with_log.logs.push_back({Complex(1.0), Complex(0.0)});
  CHECK_THROWS_AS(GravityScenario::with_sources(1.0, with_log, {}),
                  UnsupportedScenario);
  CHECK_THROWS_AS(with_log.area_coefficient(), AnalyticityError);
}
