#include "heleshaw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <variant>
#include <vector>

#include "heleshaw/errors.hpp"
#include "heleshaw/spectral.hpp"

namespace heleshaw::moments {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

const field::PointChargeField& require_point_charges(
    const field::FieldSpec& field, const char* what) {
  const auto* pc = std::get_if<field::PointChargeField>(&field);
  if (!pc) throw UnsupportedScenario(what);
  return *pc;
}

// Winding of the boundary around each charge; only 0 (outside) and 1
// (inside, counterclockwise) describe a meaningful scenario.
int charge_winding(const geometry::BoundaryCurve& boundary, Complex p) {
  const int w = geometry::winding_number(boundary.z, p);
  if (w != 0 && w != 1)
    throw GeometryError("charge is enclosed with winding other than 0 or 1");
  return w;
}

double min_distance_to_curve(const geometry::BoundaryCurve& boundary,
                             Complex p) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& z : boundary.z) d = std::min(d, std::abs(z - p));
  return d;
}

}  // namespace

HydroSingularity HydroSingularity::source(double q, Complex z) {
  HydroSingularity s;
  s.kind = Kind::SourceSink;
  s.position = z;
  s.volume_rate = q;
  return s;
}

HydroSingularity HydroSingularity::dipole(Complex mu, Complex z) {
  HydroSingularity s;
  s.kind = Kind::Dipole;
  s.position = z;
  s.dipole_moment = mu;
  return s;
}

HydroSingularity HydroSingularity::quadrupole(double beta, Complex z) {
  HydroSingularity s;
  s.kind = Kind::Quadrupole;
  s.position = z;
  s.quadrupole_strength = beta;
  return s;
}

Complex moment_integral(const geometry::BoundaryCurve& boundary,
                        const field::FieldSpec& field,
                        const std::function<Complex(Complex)>& U) {
  const auto& pc = require_point_charges(
      field, "boundary reduction of the moment integral needs a point-charge "
             "field; use the potential form instead");
  const int n = boundary.n;
  Complex contour = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex z = boundary.z[k];
    contour += std::conj(field::eval_omega(field, z)) * U(z) *
               std::conj(boundary.dz[k]);
  }
  contour *= 2.0 * kPi / static_cast<double>(n);
  // The area integral of conj(omega) U' equals i/2 times the contour sum
  // minus half of each enclosed charge weighted by U there.
  Complex J = 0.5 * kI * contour;
  for (const field::Charge& c : pc.charges) {
    if (charge_winding(boundary, c.position) == 1)
      J -= 0.5 * c.strength * U(c.position);
  }
  return J;
}

Complex moment_integral_potential_form(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::function<Complex(Complex)>& dU) {
  const int n = boundary.n;
  Complex contour = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex z = boundary.z[k];
    contour += field::eval_G(field, z) * dU(z) * boundary.dz[k];
  }
  contour *= 2.0 * kPi / static_cast<double>(n);
  return -kI * contour;
}

ResidualReport check_equilibrium(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::vector<HydroSingularity>& singularities, int orders,
    double tolerance) {
  if (orders < 1) throw ConfigError("equilibrium check needs at least order 1");
  const int n = boundary.n;
  if (n == 0) throw GeometryError("equilibrium check on an empty boundary");

  ResidualReport report;
  report.tolerance = tolerance;

  Complex z0 = 0.0;
  for (const Complex& z : boundary.z) z0 += z;
  z0 /= static_cast<double>(n);
  double R = 0.0;
  for (const Complex& z : boundary.z) R = std::max(R, std::abs(z - z0));
  if (R <= 0.0) throw GeometryError("boundary curve has no extent");
  report.center = z0;
  report.radius = R;

  const bool harmonic = field::is_point_charge_field(field);
  if (harmonic) {
    const auto& pc = std::get<field::PointChargeField>(field);
    for (const field::Charge& c : pc.charges) {
      if (min_distance_to_curve(boundary, c.position) < 1e-8 * R)
        report.collar_warning = true;
    }
  }

  for (int k = 1; k <= orders; ++k) {
    auto U = [&](Complex z) { return std::pow((z - z0) / R, k); };
    auto dU = [&](Complex z) {
      return static_cast<double>(k) / R * std::pow((z - z0) / R, k - 1);
    };
    auto ddU = [&](Complex z) {
      return static_cast<double>(k) * static_cast<double>(k - 1) / (R * R) *
             std::pow((z - z0) / R, k - 2);
    };

    const Complex lhs = harmonic
                            ? moment_integral(boundary, field, U)
                            : moment_integral_potential_form(boundary, field, dU);

    Complex rhs = 0.0;
    for (const HydroSingularity& s : singularities) {
      switch (s.kind) {
        case HydroSingularity::Kind::SourceSink:
          rhs -= s.volume_rate * U(s.position);
          break;
        case HydroSingularity::Kind::Dipole:
          rhs += s.dipole_moment * dU(s.position);
          break;
        case HydroSingularity::Kind::Quadrupole:
          rhs -= 0.5 * s.quadrupole_strength * ddU(s.position);
          break;
      }
    }

    double r = std::abs(lhs - rhs);
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    report.field_side.push_back(lhs);
    report.singularity_side.push_back(rhs);
    report.residuals.push_back(r);
    report.scale = std::max(report.scale, std::abs(lhs) + std::abs(rhs));
    report.max_residual = std::max(report.max_residual, r);
  }
  report.scale = std::max(report.scale, 1e-300);
  report.equilibrium = report.max_residual <= tolerance * report.scale;
  return report;
}

Complex feasibility_value(const field::FieldSpec& field,
                          const std::vector<HydroSingularity>& singularities) {
  Complex v = 0.0;
  for (const HydroSingularity& s : singularities) {
    switch (s.kind) {
      case HydroSingularity::Kind::SourceSink:
        v -= s.volume_rate * field::eval_F(field, s.position);
        break;
      case HydroSingularity::Kind::Dipole:
        v += s.dipole_moment * field::eval_omega(field, s.position);
        break;
      case HydroSingularity::Kind::Quadrupole:
        v -= 0.5 * s.quadrupole_strength *
             field::eval_omega_derivative(field, s.position);
        break;
    }
  }
  return v;
}

bool is_feasible(const field::FieldSpec& field,
                 const std::vector<HydroSingularity>& singularities) {
  return feasibility_value(field, singularities).real() > 0.0;
}

std::vector<std::pair<Complex, Complex>> transformed_moments(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::vector<HydroSingularity>& singularities, int max_order) {
  if (max_order < 1)
    throw ConfigError("transformed moments need at least order 1");
  const auto& pc = require_point_charges(
      field, "transformed moments are defined for point-charge fields");
  for (const field::Charge& c : pc.charges) {
    if (charge_winding(boundary, c.position) != 0)
      throw UnsupportedScenario(
          "transformed moments need every charge outside the domain");
  }

  const int n = boundary.n;
  // d/dphi of F along the boundary; single valued because no charge is
  // enclosed, so the series has a vanishing mean.
  std::vector<Complex> s(n);
  for (int k = 0; k < n; ++k)
    s[k] = field::eval_omega(field, boundary.z[k]) * boundary.dz[k];
  const spectral::FourierSeries ds =
      spectral::fourier_coefficients(spectral::CircleGrid::from_values(s));
  if (std::abs(ds.at(0)) > 1e-8 * std::max(ds.max_abs(), 1e-300))
    throw UnsupportedScenario(
        "image potential is multivalued along the boundary");

  spectral::FourierSeries anti(n);
  for (int j = ds.min_index(); j <= ds.max_index(); ++j) {
    if (j == 0) continue;
    anti.set(j, ds.at(j) / (kI * static_cast<double>(j)));
  }
  std::vector<Complex> w = anti.values_on_grid();
  const Complex offset = field::eval_F(field, boundary.z[0]) - w[0];
  for (Complex& v : w) v += offset;

  // The image curve must still bound a domain for the moments to make
  // sense; reuse the area routine's simplicity check.
  geometry::BoundaryCurve image;
  image.n = n;
  image.z = w;
  image.dz = s;
  try {
    (void)geometry::domain_area(image);
  } catch (const GeometryError&) {
    throw UnsupportedScenario("image of the boundary is not a simple curve");
  }

  std::vector<std::pair<Complex, Complex>> out;
  out.reserve(max_order);
  for (int m = 1; m <= max_order; ++m) {
    Complex integral = 0.0;
    for (int k = 0; k < n; ++k)
      integral += std::conj(w[k]) * std::pow(w[k], m) * s[k];
    integral *= 2.0 * kPi / static_cast<double>(n);
    integral *= -0.5 * kI;  // 1 / (2i)

    // Singularity prediction with the test function F^{m+1} / (m+1).
    Complex predicted = 0.0;
    for (const HydroSingularity& sing : singularities) {
      const Complex Fz = field::eval_F(field, sing.position);
      switch (sing.kind) {
        case HydroSingularity::Kind::SourceSink:
          predicted -= sing.volume_rate * std::pow(Fz, m + 1) /
                       static_cast<double>(m + 1);
          break;
        case HydroSingularity::Kind::Dipole:
          predicted += sing.dipole_moment * std::pow(Fz, m) *
                       field::eval_omega(field, sing.position);
          break;
        case HydroSingularity::Kind::Quadrupole: {
          const Complex w1 = field::eval_omega(field, sing.position);
          const Complex w2 = field::eval_omega_derivative(field, sing.position);
          predicted -= 0.5 * sing.quadrupole_strength *
                       (static_cast<double>(m) * std::pow(Fz, m - 1) * w1 * w1 +
                        std::pow(Fz, m) * w2);
          break;
        }
      }
    }
    out.emplace_back(integral, predicted);
  }
  return out;
}

double rationality_check(const geometry::ConformalMap& map,
                         const field::FieldSpec& field) {
  const auto& pc = require_point_charges(
      field, "rationality screening is defined for point-charge fields");
  const int n = std::max(512, map.natural_grid());
  const geometry::BoundaryCurve boundary = geometry::sample_boundary(map, n);

  // s(zeta) = d/dzeta of F(f(zeta)) on the unit circle; dz is the angular
  // derivative, so dividing by i zeta converts it.
  std::vector<Complex> t(n);
  for (int k = 0; k < n; ++k) {
    const Complex zeta = std::polar(1.0, boundary.angle(k));
    t[k] = field::eval_omega(field, boundary.z[k]) * boundary.dz[k] /
           (kI * zeta);
  }

  int band = 0;
  struct Denominator {
    double alpha2 = 0.0;  // for 1 - alpha^2 zeta^2
    bool zeta = false;    // multiply by zeta to clear a pole at the origin
  } denom;

  if (const auto* mp =
          std::get_if<geometry::ConformalMap::MoebiusPower>(&map.family())) {
    denom.alpha2 = mp->alpha * mp->alpha;
    band = 0;
  } else if (std::holds_alternative<geometry::ConformalMap::Exponential>(
                 map.family())) {
    band = 0;
  } else if (std::holds_alternative<geometry::ConformalMap::LinearExponential>(
                 map.family())) {
    denom.zeta = true;
    band = 1;
  } else if (std::holds_alternative<geometry::ConformalMap::EvenSquareRoot>(
                 map.family())) {
    band = 1;
  } else {
    // Numeric fallback: clear at most a simple pole at the image of the
    // origin and allow polynomial degree 2. Covers maps near the
    // exponential families; Moebius-power maps have a geometric tail that
    // this screen would misread, so they must come in closed form.
    band = 2;
    bool interior = false;
    for (const field::Charge& c : pc.charges)
      interior = interior || charge_winding(boundary, c.position) == 1;
    if (interior) {
      const Complex center = map.map(0.0);
      for (const field::Charge& c : pc.charges) {
        if (charge_winding(boundary, c.position) == 1 &&
            std::abs(c.position - center) > 1e-10 * std::abs(boundary.z[0]))
          throw UnsupportedScenario(
              "numeric rationality screening supports an interior charge "
              "only at the image of the origin");
      }
      denom.zeta = true;
    }
  }

  for (int k = 0; k < n; ++k) {
    const Complex zeta = std::polar(1.0, boundary.angle(k));
    if (denom.alpha2 != 0.0) t[k] *= 1.0 - denom.alpha2 * zeta * zeta;
    if (denom.zeta) t[k] *= zeta;
  }

  const spectral::FourierSeries coeff =
      spectral::fourier_coefficients(spectral::CircleGrid::from_values(t));
  double total = 0.0;
  double outside = 0.0;
  for (int j = coeff.min_index(); j <= coeff.max_index(); ++j) {
    const double e = std::norm(coeff.at(j));
    total += e;
    if (j < 0 || j > band) outside += e;
  }
  if (total <= 0.0) return 0.0;
  return std::sqrt(outside / total);
}

}  // namespace heleshaw::moments
