#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace heleshaw::field {

using Complex = std::complex<double>;

// One logarithmic charge: contributes (strength / 2 pi) ln |z - position|
// to the potential.
struct Charge {
  double strength = 0.0;
  Complex position;
};

// Strictly increasing scalar function with an inverse. Analytic kinds
// invert in closed form; everything else bisects to 1e-13.
class MonotoneProfile {
 public:
  MonotoneProfile();

  static MonotoneProfile identity();
  static MonotoneProfile square();          // x^2 on x >= 0
  static MonotoneProfile power(double p);   // x^p on x >= 0, p > 0
  static MonotoneProfile tabulated(std::vector<double> xs, std::vector<double> ys);
  static MonotoneProfile from_functions(std::function<double(double)> fwd,
                                        double lo, double hi);

  double forward(double x) const;
  double inverse(double y) const;
  double domain_lo() const;
  double domain_hi() const;

  enum class Kind { Identity, Square, Power, Tabulated, Custom };
  Kind kind() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// G(z) = sum (Q_m / 2 pi) ln |z - z_m|.
struct PointChargeField {
  std::vector<Charge> charges;
};

// G(z) = H(Re z).
struct UnidirectionalField {
  MonotoneProfile profile;
};

// G(z) = H(|z|^2).
struct AxisymmetricField {
  MonotoneProfile profile;
};

// Inner harmonic map of a composed field G = H(Re Xi(z)).
enum class HarmonicCore { Identity, HalfSquare };

struct ComposedHarmonicField {
  HarmonicCore core = HarmonicCore::HalfSquare;
  MonotoneProfile profile;
};

// Height profile of a curved cell, with its slope.
struct ElevationProfile {
  std::function<double(double)> height;
  std::function<double(double)> slope;
};

// Gravity-driven flow in a channel bent to height h(x): after the
// arclength change of variable the potential is h(s^{-1}(Re z)).
struct NonPlanarChannelField {
  ElevationProfile elevation;
  double x_lo = -10.0;
  double x_hi = 10.0;
};

// Surface of revolution with height K(r): after the radial conformal
// change of variable the potential is K(R^{-1}(|z|)).
struct NonPlanarRadialField {
  ElevationProfile elevation;
  double r_lo = 1e-6;
  double r_hi = 10.0;
};

using FieldSpec = std::variant<PointChargeField, UnidirectionalField,
                               AxisymmetricField, ComposedHarmonicField,
                               NonPlanarChannelField, NonPlanarRadialField>;

Complex xi_value(HarmonicCore core, Complex z);
Complex xi_derivative(HarmonicCore core, Complex z);
// Inverse branch with nonnegative real part for the half-square core.
Complex xi_inverse(HarmonicCore core, Complex w);

double eval_G(const FieldSpec& field, Complex z);

// Complex potential F with Re F = G; defined for point-charge fields only
// (principal branch per term). Other field kinds throw UnsupportedScenario.
Complex eval_F(const FieldSpec& field, Complex z);

// omega = dF/dz; point-charge fields only.
Complex eval_omega(const FieldSpec& field, Complex z);

// d omega / dz; point-charge fields only.
Complex eval_omega_derivative(const FieldSpec& field, Complex z);

bool is_point_charge_field(const FieldSpec& field);

// Arclength coordinate s(x) = int_0^x sqrt(1 + h'(t)^2) dt of a channel
// profile; strictly increasing.
double conformal_coordinate_1d(const ElevationProfile& elevation, double x);

// Radial coordinate R(r) = exp int_1^r sqrt(1 + K'(t)^2) / t dt of a
// surface of revolution; strictly increasing with R(1) = 1.
double conformal_coordinate_radial(const ElevationProfile& elevation, double r);

// Profiles seen by the flattened problem: h(s^{-1}(x)) resp. K(R^{-1}(r)).
// These make the curved-cell fields available to the planar solvers.
MonotoneProfile effective_channel_profile(const NonPlanarChannelField& field);
MonotoneProfile effective_radial_profile(const NonPlanarRadialField& field);

}  // namespace heleshaw::field
