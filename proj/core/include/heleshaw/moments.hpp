#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "heleshaw/field.hpp"
#include "heleshaw/geometry.hpp"

namespace heleshaw::moments {

using Complex = std::complex<double>;

// A hydrodynamic singularity of the flow inside the fluid domain. The
// strength conventions are fixed by the moment functional
//   J[U] = integral over the domain of conj(omega) U'(z) dA,
// which an equilibrium shape must balance as
//   J[U] = -sum_i q_i U(z_i) + mu U'(z0) - (beta / 2) U''(z0)
// for every test function U analytic on the closure of the domain.
struct HydroSingularity {
  enum class Kind { SourceSink, Dipole, Quadrupole };

  Kind kind = Kind::SourceSink;
  Complex position;
  double volume_rate = 0.0;        // q, signed; positive injects fluid
  Complex dipole_moment = 0.0;     // mu in the functional above
  double quadrupole_strength = 0.0;  // beta in the functional above

  static HydroSingularity source(double q, Complex z);
  static HydroSingularity dipole(Complex mu, Complex z);
  static HydroSingularity quadrupole(double beta, Complex z);
};

// J[U] computed from boundary data alone. Valid for point-charge fields:
// the area integral reduces to -1/(2i) of the counterclockwise contour
// integral of conj(omega) U dconj(z), plus -(Q_m / 2) U(p_m) for every
// charge Q_m at p_m enclosed by the curve. Charges are classified by
// winding number; a charge sitting on the curve raises GeometryError.
Complex moment_integral(const geometry::BoundaryCurve& boundary,
                        const field::FieldSpec& field,
                        const std::function<Complex(Complex)>& U);

// The same functional computed as -i times the contour integral of
// G(z) U'(z) dz. Works for every field kind, harmonic or not, because it
// only needs boundary values of G.
Complex moment_integral_potential_form(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::function<Complex(Complex)>& dU);

struct ResidualReport {
  bool equilibrium = false;
  double max_residual = 0.0;  // worst |J[U_k] - singularity side| over k
  double scale = 1.0;         // normalization for the relative comparison
  double tolerance = 0.0;     // relative tolerance the verdict used
  Complex center;             // expansion point of the test powers
  double radius = 0.0;        // normalization radius of the test powers
  std::vector<Complex> field_side;        // J[U_k], k = 1..orders
  std::vector<Complex> singularity_side;  // singularity sum for U_k
  std::vector<double> residuals;          // absolute differences
  bool collar_warning = false;  // a charge lies within 1e-8 R of the curve
};

// Balances J[U_k] against the singularity data for the centered powers
// U_k(z) = ((z - z0) / R)^k, k = 1..orders, where z0 is the boundary
// centroid and R the circumscribed radius. Point-charge fields use the
// boundary reduction of J; other fields use the potential form.
ResidualReport check_equilibrium(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::vector<HydroSingularity>& singularities, int orders = 12,
    double tolerance = 1e-8);

// Work functional of a singularity configuration in a point-charge field:
//   -sum_i q_i F(z_i) + mu F'(z0) - (beta / 2) F''(z0).
// A positive real part is necessary for an equilibrium to exist.
Complex feasibility_value(const field::FieldSpec& field,
                          const std::vector<HydroSingularity>& singularities);

bool is_feasible(const field::FieldSpec& field,
                 const std::vector<HydroSingularity>& singularities);

// Interior power moments of the image of the domain under w = F(z),
// paired with the values predicted from the singularity data. Entry m - 1
// holds (integral of w^m dA over the image, predicted value) for
// m = 1..max_order. Requires a point-charge field with every charge
// outside the domain, so that F restricts to a single-valued map, and an
// image boundary that is again a simple curve.
std::vector<std::pair<Complex, Complex>> transformed_moments(
    const geometry::BoundaryCurve& boundary, const field::FieldSpec& field,
    const std::vector<HydroSingularity>& singularities, int max_order);

// Structure test for equilibria of point-charge scenarios: the derivative
// d/dzeta of F(f(zeta)) times a family-specific denominator must be a low
// degree polynomial in zeta. Returns the relative out-of-band amplitude
// (root of the spectral energy fraction outside the band), about 1e-14
// for a genuine equilibrium map and order one for a perturbed one. Numeric maps are screened against band
// degree 2 after clearing at most a simple pole at the origin, which
// covers maps close to the exponential families; Moebius-power maps must
// be passed in closed form.
double rationality_check(const geometry::ConformalMap& map,
                         const field::FieldSpec& field);

}  // namespace heleshaw::moments
