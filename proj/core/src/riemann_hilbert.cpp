#include "heleshaw/riemann_hilbert.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "heleshaw/errors.hpp"
#include "heleshaw/spectral.hpp"

namespace heleshaw::rh {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Kind { Unidirectional, Axisymmetric, Composed };

double theta_value(double alpha, double beta, double phi) {
  return beta + 2.0 * alpha * std::cos(phi);
}

// The additive data of the boundary problem: the quantity whose values on
// the circle determine the analytic unknown directly.
//   unidirectional: Re f      = inverse(Theta)
//   axisymmetric:   ln|f|     = ln(inverse(Theta)) / 2
//   composed:       Re(f^2)/2 = inverse(Theta)
double additive_data(Kind kind, const field::MonotoneProfile& profile,
                     double alpha, double beta, double phi) {
  const double g = profile.inverse(theta_value(alpha, beta, phi));
  if (kind != Kind::Axisymmetric) return g;
  if (!(g > 0.0))
    throw InvalidParameters(
        "axisymmetric data reaches zero; the shape would pinch at the axis");
  return 0.5 * std::log(g);
}

void validate_parameters(Kind kind, const field::MonotoneProfile& profile,
                         double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw InvalidParameters("boundary data needs finite alpha > 0");
  // The data ranges over [beta - 2 alpha, beta + 2 alpha]; both ends must
  // lie in the range of the field profile.
  try {
    (void)additive_data(kind, profile, alpha, beta, kPi);
    (void)additive_data(kind, profile, alpha, beta, 0.0);
  } catch (const DomainError&) {
    throw InvalidParameters("boundary data leaves the field profile range");
  }
}

// Mean and first cosine moment of the additive data over the circle,
// integrated by Gauss-Legendre on the half period. The data is smooth on
// the closed interval even when its periodic extension has a kink at pi,
// so the quadrature converges to machine precision.
std::array<double, 2> data_moments(Kind kind,
                                   const field::MonotoneProfile& profile,
                                   double alpha, double beta) {
  static const spectral::QuadratureRule rule =
      spectral::gauss_legendre(200, 0.0, kPi);
  double mean = 0.0, first = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double g =
        additive_data(kind, profile, alpha, beta, rule.nodes[i]);
    mean += rule.weights[i] * g;
    first += rule.weights[i] * g * std::cos(rule.nodes[i]);
  }
  return {mean / kPi, 2.0 * first / kPi};  // c_0 and 2 c_1 of the data
}

ForwardValues forward_values(Kind kind, const field::MonotoneProfile& profile,
                             double alpha, double beta) {
  validate_parameters(kind, profile, alpha, beta);
  const auto [c0, two_c1] = data_moments(kind, profile, alpha, beta);
  ForwardValues fv;
  switch (kind) {
    case Kind::Unidirectional:
      // f = c0 + sum 2 c_j zeta^j.
      fv.position = c0;
      fv.fprime0 = two_c1;
      break;
    case Kind::Axisymmetric:
      // f = exp(L) with Re L the halved log data, so f(0) = e^{c0} and
      // f'(0) = f(0) * 2 c_1.
      fv.position = std::exp(c0);
      fv.fprime0 = fv.position * two_c1;
      break;
    case Kind::Composed:
      // f = sqrt(2 Z) with Z the additive solution.
      if (!(c0 > 0.0))
        throw InvalidParameters(
            "composed data has nonpositive mean; no dipole position exists");
      fv.position = std::sqrt(2.0 * c0);
      fv.fprime0 = two_c1 / fv.position;
      break;
  }
  return fv;
}

struct BuiltMap {
  geometry::ConformalMap map;
  int grid;
  bool resolution_limited;
};

// Samples the additive data on successively doubled grids until its
// Fourier tail is resolved, then assembles the conformal map for the
// given problem kind.
BuiltMap build_map(Kind kind, const field::MonotoneProfile& profile,
                   double alpha, double beta, int n) {
  if (!spectral::is_valid_grid_size(n))
    throw ConfigError("grid size must be a power of two in [64, 32768]");

  for (;; n *= 2) {
    std::vector<double> data(n);
    for (int k = 0; k < n; ++k)
      data[k] = additive_data(kind, profile, alpha, beta, 2.0 * kPi * k / n);

    std::vector<Complex> values(data.begin(), data.end());
    const auto coeff = spectral::fourier_coefficients(
        spectral::CircleGrid::from_values(std::move(values)));
    const bool resolved =
        std::abs(coeff.at(coeff.min_index())) <= 1e-8 * coeff.max_abs();
    if (!resolved && n < spectral::kMaxGridSize) continue;

    spectral::FourierSeries additive(n);
    additive.set(0, coeff.at(0));
    for (int j = 1; j <= n / 2 - 1; ++j) additive.set(j, 2.0 * coeff.at(j));

    if (kind == Kind::Unidirectional) {
      return {geometry::ConformalMap::from_series(std::move(additive)), n,
              !resolved};
    }

    // The remaining kinds transform the additive solution pointwise on the
    // grid (exp for the log data, sqrt for the squared data) and read the
    // map back off a second transform.  The exact boundary values of the
    // final analytic map have no negative modes, so whatever lands there
    // is aliasing of the pointwise step; it must sit at the resolution
    // floor before it may be projected away.
    if (kind == Kind::Composed) {
      double gmin = 0.0, gmax = 0.0;
      for (double g : data) {
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, std::abs(g));
      }
      if (gmin < -1e-12 * std::max(gmax, 1.0))
        throw InvalidParameters(
            "composed data goes negative; the square-root map would "
            "branch inside the domain");
    }
    std::vector<Complex> f = additive.values_on_grid();
    if (kind == Kind::Axisymmetric) {
      // additive holds L with Re L = ln|f|; the map is exp(L).
      for (Complex& v : f) v = std::exp(v);
    } else {
      // additive holds Z with Re Z = g >= 0; the map is sqrt(2 Z),
      // principal branch, which is continuous on the closed right half
      // plane reached by Z.
      for (Complex& v : f) v = std::sqrt(2.0 * v);
    }
    auto raw = spectral::fourier_coefficients(
        spectral::CircleGrid::from_values(std::move(f)));
    double minus = 0.0;
    for (int j = raw.min_index(); j < 0; ++j)
      minus = std::max(minus, std::abs(raw.at(j)));
    const bool clean = minus <= 1e-8 * raw.max_abs();
    if (!(resolved && clean) && n < spectral::kMaxGridSize) continue;

    spectral::FourierSeries series(n);
    for (int j = 0; j <= raw.max_index(); ++j) series.set(j, raw.at(j));
    return {geometry::ConformalMap::from_series(std::move(series)), n,
            !(resolved && clean)};
  }
}

double boundary_residual(Kind kind, const field::MonotoneProfile& profile,
                         const geometry::ConformalMap& map, double alpha,
                         double beta, int n) {
  const auto boundary = geometry::sample_boundary(map, n);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n;
    const double theta = theta_value(alpha, beta, phi);
    const Complex z = boundary.z[k];
    double r = 0.0;
    switch (kind) {
      case Kind::Unidirectional:
        r = std::abs(profile.forward(z.real()) - theta);
        break;
      case Kind::Axisymmetric:
        r = std::abs(std::norm(z) - profile.inverse(theta));
        break;
      case Kind::Composed:
        r = std::abs((z * z).real() - 2.0 * profile.inverse(theta));
        break;
    }
    worst = std::max(worst, r);
  }
  return worst;
}

field::FieldSpec field_for(Kind kind, const field::MonotoneProfile& profile) {
  switch (kind) {
    case Kind::Unidirectional:
      return field::UnidirectionalField{profile};
    case Kind::Axisymmetric:
      return field::AxisymmetricField{profile};
    case Kind::Composed:
    default:
      return field::ComposedHarmonicField{field::HarmonicCore::HalfSquare,
                                          profile};
  }
}

RHSolution from_parameters(Kind kind, const field::MonotoneProfile& profile,
                           double alpha, double beta, int n) {
  validate_parameters(kind, profile, alpha, beta);
  BuiltMap built = build_map(kind, profile, alpha, beta, n);
  const ForwardValues fv = forward_values(kind, profile, alpha, beta);

  RHSolution sol{std::move(built.map),
                 alpha,
                 beta,
                 fv.position,
                 alpha * fv.fprime0,
                 built.grid,
                 0.0,
                 built.resolution_limited,
                 field_for(kind, profile),
                 {}};
  sol.boundary_residual =
      boundary_residual(kind, profile, sol.map, alpha, beta, built.grid);
  sol.singularities.push_back(
      moments::HydroSingularity::dipole(sol.moment(), sol.position));
  return sol;
}

RHSolution solve(Kind kind, const field::MonotoneProfile& profile,
                 double position, double moment, int n) {
  if (!(position > 0.0) || !(moment > 0.0))
    throw ConfigError("dipole position and moment must be positive");
  const double mu = moment / (2.0 * kPi);

  // Variables u = ln alpha, v = ln(beta - 2 alpha) keep the iteration in
  // the admissible wedge. The scale of alpha tracks the scale of mu.
  const double alpha0 = std::max(mu, 1e-3);
  const auto residual = [&](double u, double v) -> std::array<double, 2> {
    const double alpha = std::exp(u);
    const double beta = 2.0 * alpha + std::exp(v);
    const ForwardValues fv = forward_values(kind, profile, alpha, beta);
    return {fv.position - position, alpha * fv.fprime0 - mu};
  };
  const auto root = spectral::find_root_2d(
      residual, std::log(alpha0), std::log(0.5 * alpha0));
  const double alpha = std::exp(root.x);
  const double beta = 2.0 * alpha + std::exp(root.y);
  return from_parameters(kind, profile, alpha, beta, n);
}

}  // namespace

double RHSolution::moment() const { return 2.0 * kPi * mu_parameter; }

ForwardValues unidirectional_forward(const field::MonotoneProfile& profile,
                                     double alpha, double beta) {
  return forward_values(Kind::Unidirectional, profile, alpha, beta);
}

ForwardValues axisymmetric_forward(const field::MonotoneProfile& profile,
                                   double alpha, double beta) {
  return forward_values(Kind::Axisymmetric, profile, alpha, beta);
}

ForwardValues composed_forward(const field::MonotoneProfile& profile,
                               double alpha, double beta) {
  return forward_values(Kind::Composed, profile, alpha, beta);
}

RHSolution unidirectional_from_parameters(const field::MonotoneProfile& profile,
                                          double alpha, double beta, int n) {
  return from_parameters(Kind::Unidirectional, profile, alpha, beta, n);
}

RHSolution axisymmetric_from_parameters(const field::MonotoneProfile& profile,
                                        double alpha, double beta, int n) {
  return from_parameters(Kind::Axisymmetric, profile, alpha, beta, n);
}

RHSolution composed_from_parameters(const field::MonotoneProfile& profile,
                                    double alpha, double beta, int n) {
  return from_parameters(Kind::Composed, profile, alpha, beta, n);
}

RHSolution solve_unidirectional(const field::MonotoneProfile& profile,
                                double position, double moment, int n) {
  return solve(Kind::Unidirectional, profile, position, moment, n);
}

RHSolution solve_axisymmetric(const field::MonotoneProfile& profile,
                              double position, double moment, int n) {
  return solve(Kind::Axisymmetric, profile, position, moment, n);
}

RHSolution solve_composed(const field::MonotoneProfile& profile,
                          double position, double moment, int n) {
  return solve(Kind::Composed, profile, position, moment, n);
}

}  // namespace heleshaw::rh
